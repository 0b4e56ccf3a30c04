#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootlts/search.hpp"
#include "rootlts/verify.hpp"

namespace rootlts::bench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string algo = "rootlts";  // rootlts | lts-sop | lts-dop | bfs | puct
  std::string domain = "cluetree";  // cluetree|chain|dchain|misleading|sokoban
  std::string scheme = "per-count";  // none|clue-uniform|per-count|
                                     // per-count-by-type|mz-fixed|reward|
                                     // robust-clue|exp-clue|f-neg-inv-log|
                                     // f-sqrt|f-log1p
  std::uint32_t a = 3;
  std::uint32_t q = 4;
  std::uint32_t D = 8;
  double alpha = 0.5;        // misleading reward
  std::uint32_t depth = 6;   // misleading goal depth
  std::uint32_t len = 9;     // chain length (goal depth)
  std::string level;         // XSB file for sokoban
  double cpuct = 2.0;
  double falpha = 1.0;       // alpha of f(x) = ln(1 + alpha x)
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 0;
};

struct BoundRow {
  std::string kind;
  std::vector<std::uint64_t> steps;
  std::uint64_t t = 0;
  double bound = 0.0;
  bool holds = false;
};

struct RunRecord {
  ExperimentConfig config;
  bool solved = false;
  std::uint64_t steps = 0;  // T: solution step, or visits performed
  std::uint32_t solution_depth = 0;
  double cum_weight_lt = 0.0;        // W_{<T}
  double cum_input_weight_lt = 0.0;  // W~_{<T}
  std::vector<std::uint64_t> clues_by_type;  // index 0 = total
  std::vector<BoundRow> bounds;
  bool bounds_hold = true;
  std::optional<bool> lemma1;
  std::string stop_reason;
  double wall_seconds = 0.0;
  std::size_t peak_queue = 0;
  std::uint64_t nodes = 0;
};

// Executes one configured run including all applicable bound checks.
RunRecord run_one(const ExperimentConfig& cfg);

std::string to_json(const RunRecord& r);
std::string csv_header();
std::string to_csv_row(const RunRecord& r);

struct BenchRequest {
  ExperimentConfig base;
  std::vector<std::string> algos;       // defaults to {base.algo}
  std::vector<std::uint32_t> a_list;    // cluetree sweeps
  std::vector<std::uint32_t> q_list;
  std::vector<std::uint32_t> d_list;    // dchain sweeps
  std::uint32_t seeds = 1;              // seeds 0..seeds-1 offset by base.seed
  std::uint32_t jobs = 1;
};

struct BenchOutput {
  std::vector<RunRecord> records;  // deterministic order
  std::string csv;
  std::string summary_json;  // per-cell mean/max + paired speedups
};

BenchOutput run_bench(const BenchRequest& req);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Verification battery. Selectors: appendix-g, sokoban-sim, cluetree,
// robust, dchain, sccf, telescoping, bounds, all. quick shrinks trial
// counts for unit-test latency; acceptance runs use quick = false.
std::vector<CheckResult> run_suite(const std::string& selector,
                                   bool quick = false);
std::string to_json(const std::vector<CheckResult>& checks);

// Build helpers shared with the CLI and tests.
std::unique_ptr<Environment> make_env(const ExperimentConfig& cfg);
std::unique_ptr<CostModel> make_model(const std::string& algo);
std::unique_ptr<Rerooter> make_rerooter(const ExperimentConfig& cfg,
                                        const Environment& env);

}  // namespace rootlts::bench
