#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "rootlts/bench.hpp"
#include "rootlts/search.hpp"

namespace {

using rootlts::bench::BenchRequest;
using rootlts::bench::ExperimentConfig;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitBound = 4;

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--algo", cfg.algo,
                  "rootlts | lts-sop | lts-dop | bfs | puct");
  cmd->add_option("--domain", cfg.domain,
                  "cluetree | chain | dchain | misleading | sokoban");
  cmd->add_option("--scheme", cfg.scheme,
                  "none | clue-uniform | clue-indicator | per-count | "
                  "per-count-by-type | mz-fixed | reward | robust-clue | "
                  "exp-clue | f-neg-inv-log | f-sqrt | f-log1p");
  cmd->add_option("--a", cfg.a, "clue tree: max relative clue depth");
  cmd->add_option("--q", cfg.q, "clue tree: number of clues");
  cmd->add_option("--D", cfg.D, "chain-with-rewards depth");
  cmd->add_option("--alpha", cfg.alpha, "misleading reward value");
  cmd->add_option("--depth", cfg.depth, "misleading reward goal depth");
  cmd->add_option("--len", cfg.len, "chain length");
  cmd->add_option("--level", cfg.level, "sokoban XSB level file");
  cmd->add_option("--cpuct", cfg.cpuct, "PUCT exploration constant");
  cmd->add_option("--falpha", cfg.falpha, "alpha for f(x) = ln(1 + alpha x)");
  cmd->add_option("--budget", cfg.budget, "visit budget");
  cmd->add_option("--seed", cfg.seed, "base seed")->envname("ROOTLTS_SEED");
  cmd->set_config("--config");
  cmd->allow_config_extras(false);
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::fputs(data.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << data;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rerooted Levin tree search toolkit"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string out_path;
  std::string format = "json";

  CLI::App* solve = app.add_subcommand("solve", "run one search");
  add_common_flags(solve, cfg);
  solve->add_option("--out", out_path, "output file (default stdout)");
  solve->add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* bench = app.add_subcommand("bench", "seeded sweeps, CSV output");
  ExperimentConfig bench_cfg;
  BenchRequest req;
  add_common_flags(bench, bench_cfg);
  bench->add_option("--algos", req.algos, "algorithms to pair per cell");
  bench->add_option("--a-list", req.a_list, "clue tree sweep over a");
  bench->add_option("--q-list", req.q_list, "clue tree sweep over q");
  bench->add_option("--d-list", req.d_list, "dchain sweep over D");
  bench->add_option("--seeds", req.seeds, "seeds per cell");
  bench->add_option("--jobs", req.jobs, "parallel workers");
  std::string bench_out;
  bench->add_option("--out", bench_out, "CSV file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the checks battery");
  std::string suite = "all";
  bool quick = false;
  verify->add_option("--suite", suite,
                     "appendix-g | sokoban-sim | cluetree | robust | dchain | "
                     "sccf | telescoping | bounds | all");
  verify->add_flag("--quick", quick, "reduced trial counts");
  std::string verify_out;
  verify->add_option("--out", verify_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) {
      rootlts::bench::RunRecord rec = rootlts::bench::run_one(cfg);
      std::string data = format == "csv" ? rootlts::bench::csv_header() + "\n" +
                                               rootlts::bench::to_csv_row(rec) +
                                               "\n"
                                         : rootlts::bench::to_json(rec) + "\n";
      write_output(out_path, data);
      if (!rec.bounds_hold || (rec.lemma1 && !*rec.lemma1)) return kExitBound;
      return rec.solved ? 0 : 1;
    }
    if (bench->parsed()) {
      req.base = bench_cfg;
      rootlts::bench::BenchOutput out = rootlts::bench::run_bench(req);
      write_output(bench_out, out.csv);
      std::fprintf(stdout, "%s\n", out.summary_json.c_str());
      return 0;
    }
    if (verify->parsed()) {
      auto checks = rootlts::bench::run_suite(suite, quick);
      write_output(verify_out, rootlts::bench::to_json(checks) + "\n");
      bool all = true;
      for (const auto& c : checks) all = all && c.pass;
      for (const auto& c : checks) {
        std::fprintf(stderr, "[%s] %s: %s\n", c.pass ? "PASS" : "FAIL",
                     c.suite.c_str(), c.name.c_str());
      }
      return all ? 0 : kExitBound;
    }
  } catch (const rootlts::bench::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const rootlts::NumericFault& e) {
    std::fprintf(stderr, "numeric fault: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
