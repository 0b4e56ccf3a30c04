#include "rootlts/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "rootlts/baselines.hpp"
#include "rootlts/domains/clue_tree.hpp"
#include "rootlts/domains/sokoban.hpp"
#include "rootlts/domains/trees.hpp"
#include "rootlts/util.hpp"

namespace rootlts::bench {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::unique_ptr<Environment> make_env(const ExperimentConfig& cfg) {
  if (cfg.domain == "cluetree") {
    return std::make_unique<domains::ClueTreeEnv>(
        domains::ClueTreeSpec{cfg.a, cfg.q, cfg.seed});
  }
  if (cfg.domain == "chain") {
    std::vector<double> probs(cfg.len, 1.0);
    return std::make_unique<domains::ChainEnv>(probs, cfg.len);
  }
  if (cfg.domain == "dchain") {
    return std::make_unique<domains::DChainEnv>(cfg.D);
  }
  if (cfg.domain == "misleading") {
    return std::make_unique<domains::MisleadingRewardEnv>(cfg.alpha, cfg.depth);
  }
  if (cfg.domain == "sokoban") {
    std::string text =
        cfg.level.empty() ? domains::kStandinLevel : read_file(cfg.level);
    return std::make_unique<domains::SokobanEnv>(
        domains::SokobanLevel::parse(text));
  }
  throw ConfigError("unknown domain: " + cfg.domain);
}

std::unique_ptr<CostModel> make_model(const std::string& algo) {
  if (algo == "rootlts") return std::make_unique<CrltsCost>();
  if (algo == "lts-sop") return std::make_unique<SopCost>();
  if (algo == "lts-dop") return std::make_unique<DopCost>();
  if (algo == "bfs") return std::make_unique<BreadthCost>();
  throw ConfigError("unknown algo: " + algo);
}

std::unique_ptr<Rerooter> make_rerooter(const ExperimentConfig& cfg,
                                        const Environment& env) {
  const std::string& s = cfg.scheme;
  if (s == "none") return std::make_unique<NullRerooter>();
  if (s == "clue-uniform") {
    if (cfg.q == 0) throw ConfigError("clue-uniform needs q >= 1");
    return std::make_unique<UniformClueRerooter>(cfg.q);
  }
  if (s == "clue-indicator") return std::make_unique<UniformClueRerooter>(1);
  if (s == "per-count") return std::make_unique<PerCountRerooter>();
  if (s == "per-count-by-type") return std::make_unique<PerTypeCountRerooter>();
  if (s == "reward") return std::make_unique<RewardRerooter>();
  if (s == "mz-fixed") {
    auto* sok = dynamic_cast<const domains::SokobanEnv*>(&env);
    if (!sok) throw ConfigError("mz-fixed applies to sokoban only");
    auto n = static_cast<std::uint64_t>(sok->level().floor_cells());
    std::vector<double> w{0.0};
    for (int z = 1; z <= 3; ++z) {
      w.push_back(1.0 / static_cast<double>(domains::clue_count_estimate(n, z)));
    }
    return std::make_unique<PerTypeFixedRerooter>(std::move(w));
  }
  if (s == "robust-clue") {
    return std::make_unique<RobustRerooter>(
        std::make_unique<UniformClueRerooter>(1));
  }
  if (s == "exp-clue") {
    return std::make_unique<RobustRerooter>(
        std::make_unique<ExponentialClueRerooter>());
  }
  if (s == "f-neg-inv-log" || s == "f-sqrt" || s == "f-log1p") {
    FTransform f;
    f.kind = s == "f-neg-inv-log" ? FKind::kNegInvLog
             : s == "f-sqrt"      ? FKind::kSqrt
                                  : FKind::kLog1pAlpha;
    f.alpha = cfg.falpha;
    return std::make_unique<FTransformRerooter>(
        f, std::make_unique<UniformClueRerooter>(1));
  }
  throw ConfigError("unknown scheme: " + s);
}

namespace {

bool scheme_is_robust(const std::string& s) {
  return s == "robust-clue" || s == "exp-clue";
}

void append_bounds(RunRecord& rec, const SearchRun& run, bool robust) {
  auto push = [&rec](const verify::BoundReport& b) {
    rec.bounds.push_back({verify::to_string(b.kind), b.decomposition.steps,
                          b.t_actual, b.bound_value, b.holds});
    rec.bounds_hold = rec.bounds_hold && b.holds;
  };
  auto decomps = verify::sample_decompositions(run);
  for (const auto& d : decomps) {
    push(verify::bound_thm3(run, d));
    push(verify::bound_cor4(run, d));
    if (robust) push(verify::bound_cor6(run, d));
  }
  if (run.solution && run.solution->step > 1) {
    push(verify::bound_eq14(run, run.solution->step));
  }
}

}  // namespace

RunRecord run_one(const ExperimentConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  auto env = make_env(cfg);
  auto start = std::chrono::steady_clock::now();

  if (cfg.algo == "puct") {
    PuctResult res = puct_search(*env, cfg.cpuct, cfg.budget, cfg.seed);
    rec.solved = res.first_goal_iteration.has_value();
    rec.steps = res.first_goal_iteration.value_or(res.iterations);
    rec.stop_reason = rec.solved ? "goal_found" : "step_budget";
    rec.nodes = res.nodes_in_tree;
  } else {
    auto model = make_model(cfg.algo);
    auto rerooter = make_rerooter(cfg, *env);
    SearchRun run = run_search(*env, *model, *rerooter, cfg.budget, cfg.seed);
    rec.solved = run.solution.has_value();
    rec.steps = rec.solved ? run.solution->step : run.steps();
    if (rec.solved) {
      rec.solution_depth = run.arena[run.solution->node].depth;
    }
    if (run.steps() > 0) {
      rec.cum_weight_lt = run.cum_weight_lt(run.steps());
      rec.cum_input_weight_lt = run.cum_input_weight_lt(run.steps());
    }
    rec.clues_by_type.push_back(run.final_counters.total_clues);
    for (std::size_t z = 1; z < run.final_counters.clues_by_type.size(); ++z) {
      rec.clues_by_type.push_back(run.final_counters.clues_by_type[z]);
    }
    if (cfg.algo == "rootlts" && rec.solved) {
      append_bounds(rec, run, scheme_is_robust(cfg.scheme));
    }
    if (cfg.algo == "lts-sop") rec.lemma1 = verify::check_lemma1(run);
    rec.stop_reason = to_string(run.stop_reason);
    rec.peak_queue = run.peak_queue;
    rec.nodes = run.arena.size();
  }

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rec;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

void json_config(std::string& out, const ExperimentConfig& c) {
  out += "{\"algo\":\"" + json_escape(c.algo) + "\"";
  out += ",\"domain\":\"" + json_escape(c.domain) + "\"";
  out += ",\"scheme\":\"" + json_escape(c.scheme) + "\"";
  out += ",\"a\":" + std::to_string(c.a);
  out += ",\"q\":" + std::to_string(c.q);
  out += ",\"D\":" + std::to_string(c.D);
  out += ",\"alpha\":" + fmt_double(c.alpha);
  out += ",\"depth\":" + std::to_string(c.depth);
  out += ",\"len\":" + std::to_string(c.len);
  out += ",\"level\":\"" + json_escape(c.level) + "\"";
  out += ",\"cpuct\":" + fmt_double(c.cpuct);
  out += ",\"falpha\":" + fmt_double(c.falpha);
  out += ",\"budget\":" + std::to_string(c.budget);
  out += ",\"seed\":" + std::to_string(c.seed);
  out += "}";
}

}  // namespace

std::string to_json(const RunRecord& r) {
  std::string out = "{\"config\":";
  json_config(out, r.config);
  out += ",\"solved\":" + std::string(r.solved ? "true" : "false");
  out += ",\"T\":" + std::to_string(r.steps);
  out += ",\"solution_depth\":" + std::to_string(r.solution_depth);
  out += ",\"W_lt_T\":" + fmt_double(r.cum_weight_lt);
  out += ",\"Wtilde_lt_T\":" + fmt_double(r.cum_input_weight_lt);
  out += ",\"clues\":[";
  for (std::size_t i = 0; i < r.clues_by_type.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(r.clues_by_type[i]);
  }
  out += "],\"bounds\":[";
  for (std::size_t i = 0; i < r.bounds.size(); ++i) {
    const BoundRow& b = r.bounds[i];
    if (i) out += ",";
    out += "{\"kind\":\"" + b.kind + "\",\"steps\":[";
    for (std::size_t k = 0; k < b.steps.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(b.steps[k]);
    }
    out += "],\"t\":" + std::to_string(b.t);
    out += ",\"bound\":" + fmt_double(b.bound);
    out += ",\"holds\":" + std::string(b.holds ? "true" : "false") + "}";
  }
  out += "],\"bounds_hold\":" + std::string(r.bounds_hold ? "true" : "false");
  if (r.lemma1) {
    out += ",\"lemma1\":" + std::string(*r.lemma1 ? "true" : "false");
  }
  out += ",\"stop_reason\":\"" + r.stop_reason + "\"";
  out += ",\"wall_seconds\":" + fmt_double(r.wall_seconds);
  out += ",\"peak_queue\":" + std::to_string(r.peak_queue);
  out += ",\"nodes\":" + std::to_string(r.nodes);
  out += "}";
  return out;
}

std::string csv_header() {
  return "algo,domain,scheme,a,q,D,alpha,depth,len,budget,seed,solved,T,"
         "solution_depth,W_lt_T,Wtilde_lt_T,clues_total,clues1,clues2,clues3,"
         "bounds_hold,stop_reason,wall_seconds,peak_queue,nodes";
}

std::string to_csv_row(const RunRecord& r) {
  const ExperimentConfig& c = r.config;
  std::string out;
  out += c.algo + "," + c.domain + "," + c.scheme + ",";
  out += std::to_string(c.a) + "," + std::to_string(c.q) + ",";
  out += std::to_string(c.D) + "," + fmt_double(c.alpha) + ",";
  out += std::to_string(c.depth) + "," + std::to_string(c.len) + ",";
  out += std::to_string(c.budget) + "," + std::to_string(c.seed) + ",";
  out += std::string(r.solved ? "1" : "0") + "," + std::to_string(r.steps) + ",";
  out += std::to_string(r.solution_depth) + "," + fmt_double(r.cum_weight_lt) +
         "," + fmt_double(r.cum_input_weight_lt) + ",";
  for (std::size_t i = 0; i < 4; ++i) {
    out += (i < r.clues_by_type.size() ? std::to_string(r.clues_by_type[i])
                                       : "0") +
           ",";
  }
  out += std::string(r.bounds_hold ? "1" : "0") + "," + r.stop_reason + ",";
  out += fmt_double(r.wall_seconds) + "," + std::to_string(r.peak_queue) +
         "," + std::to_string(r.nodes);
  return out;
}

BenchOutput run_bench(const BenchRequest& req) {
  std::vector<ExperimentConfig> cells;
  ExperimentConfig base = req.base;
  std::vector<std::string> algos =
      req.algos.empty() ? std::vector<std::string>{base.algo} : req.algos;

  std::vector<ExperimentConfig> domain_cells;
  if (base.domain == "cluetree" && !req.a_list.empty() && !req.q_list.empty()) {
    for (std::uint32_t a : req.a_list) {
      for (std::uint32_t q : req.q_list) {
        ExperimentConfig c = base;
        c.a = a;
        c.q = q;
        domain_cells.push_back(c);
      }
    }
  } else if (base.domain == "dchain" && !req.d_list.empty()) {
    for (std::uint32_t d : req.d_list) {
      ExperimentConfig c = base;
      c.D = d;
      domain_cells.push_back(c);
    }
  } else {
    domain_cells.push_back(base);
  }

  for (const auto& cell : domain_cells) {
    for (const std::string& algo : algos) {
      for (std::uint32_t s = 0; s < req.seeds; ++s) {
        ExperimentConfig c = cell;
        c.algo = algo;
        c.scheme = algo == "rootlts" ? cell.scheme : "none";
        c.seed = base.seed + s;
        cells.push_back(c);
      }
    }
  }

  BenchOutput out;
  out.records.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      out.records[i] = run_one(cells[i]);
    }
  };
  std::uint32_t jobs = std::max<std::uint32_t>(1, req.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  out.csv = csv_header() + "\n";
  for (const RunRecord& r : out.records) out.csv += to_csv_row(r) + "\n";

  // Per-cell aggregates, plus paired speedups when exactly two algos ran.
  std::string summary = "[";
  bool first = true;
  std::size_t per_algo = req.seeds;
  std::size_t per_cell = per_algo * algos.size();
  for (std::size_t cell = 0; cell < domain_cells.size(); ++cell) {
    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
      double sum = 0, mx = 0;
      std::size_t solved = 0;
      for (std::uint32_t s = 0; s < req.seeds; ++s) {
        const RunRecord& r =
            out.records[cell * per_cell + ai * per_algo + s];
        sum += static_cast<double>(r.steps);
        mx = std::max(mx, static_cast<double>(r.steps));
        solved += r.solved;
      }
      if (!first) summary += ",";
      first = false;
      const ExperimentConfig& c = domain_cells[cell];
      summary += "{\"domain\":\"" + c.domain + "\",\"a\":" +
                 std::to_string(c.a) + ",\"q\":" + std::to_string(c.q) +
                 ",\"D\":" + std::to_string(c.D) + ",\"algo\":\"" + algos[ai] +
                 "\",\"runs\":" + std::to_string(req.seeds) +
                 ",\"solved\":" + std::to_string(solved) +
                 ",\"mean_T\":" + fmt_double(sum / req.seeds) +
                 ",\"max_T\":" + fmt_double(mx) + "}";
    }
    if (algos.size() == 2) {
      std::vector<double> ratios;
      for (std::uint32_t s = 0; s < req.seeds; ++s) {
        const RunRecord& r0 = out.records[cell * per_cell + s];
        const RunRecord& r1 = out.records[cell * per_cell + per_algo + s];
        ratios.push_back(static_cast<double>(r1.steps) /
                         static_cast<double>(r0.steps));
      }
      std::sort(ratios.begin(), ratios.end());
      double median = ratios[ratios.size() / 2];
      const ExperimentConfig& c = domain_cells[cell];
      summary += ",{\"domain\":\"" + c.domain + "\",\"a\":" +
                 std::to_string(c.a) + ",\"q\":" + std::to_string(c.q) +
                 ",\"D\":" + std::to_string(c.D) + ",\"pair\":\"" + algos[1] +
                 "/" + algos[0] +
                 "\",\"median_speedup\":" + fmt_double(median) + "}";
    }
  }
  summary += "]";
  out.summary_json = summary;
  return out;
}

std::string to_json(const std::vector<CheckResult>& checks) {
  std::string out = "[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) out += ",";
    out += "{\"suite\":\"" + json_escape(checks[i].suite) + "\",\"check\":\"" +
           json_escape(checks[i].name) + "\",\"pass\":" +
           (checks[i].pass ? "true" : "false") + ",\"detail\":\"" +
           json_escape(checks[i].detail) + "\"}";
  }
  out += "]";
  return out;
}

}  // namespace rootlts::bench
