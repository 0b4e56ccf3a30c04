#include <doctest.h>

#include <algorithm>

#include "rootlts/bench.hpp"

using namespace rootlts::bench;

TEST_CASE("solve record on the probability-1 chain") {
  ExperimentConfig cfg;
  cfg.domain = "chain";
  cfg.algo = "lts-sop";
  cfg.scheme = "none";
  cfg.len = 9;
  cfg.budget = 100;
  RunRecord rec = run_one(cfg);
  CHECK(rec.solved);
  CHECK(rec.steps == 10);
  CHECK(rec.lemma1.has_value());
  CHECK(*rec.lemma1);

  std::string json = to_json(rec);
  CHECK(json.find("\"T\":10") != std::string::npos);
  CHECK(json.find("\"solved\":true") != std::string::npos);

  // byte-identical output for identical config
  RunRecord again = run_one(cfg);
  auto strip_wall = [](std::string s) {
    auto pos = s.find("\"wall_seconds\"");
    return s.substr(0, pos);
  };
  CHECK(strip_wall(to_json(again)) == strip_wall(json));
  CHECK(to_csv_row(rec).find("lts-sop,chain") != std::string::npos);
}

TEST_CASE("rerooted solve records carry bound reports that hold") {
  ExperimentConfig cfg;
  cfg.domain = "dchain";
  cfg.D = 8;
  cfg.algo = "rootlts";
  cfg.scheme = "reward";
  cfg.budget = 9 * 256 + 16;
  RunRecord rec = run_one(cfg);
  CHECK(rec.solved);
  CHECK(rec.steps <= 9 * 256);
  CHECK(!rec.bounds.empty());
  CHECK(rec.bounds_hold);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.algo = "quantum";
  CHECK_THROWS_AS(run_one(cfg), ConfigError);
  cfg.algo = "rootlts";
  cfg.domain = "chess";
  CHECK_THROWS_AS(run_one(cfg), ConfigError);
  cfg.domain = "cluetree";
  cfg.scheme = "magic";
  CHECK_THROWS_AS(run_one(cfg), ConfigError);
  cfg.scheme = "mz-fixed";  // sokoban-only scheme
  CHECK_THROWS_AS(run_one(cfg), ConfigError);
}

TEST_CASE("paired bench sweep reports a median speedup of at least 1") {
  BenchRequest req;
  req.base.domain = "cluetree";
  req.base.scheme = "per-count";
  req.base.budget = 100000;
  req.base.seed = 400;
  req.algos = {"rootlts", "lts-sop"};
  req.a_list = {4};
  req.q_list = {6};
  req.seeds = 9;
  req.jobs = 2;
  BenchOutput out = run_bench(req);
  REQUIRE(out.records.size() == 18);

  std::vector<double> ratios;
  for (std::uint32_t s = 0; s < req.seeds; ++s) {
    double t_root = static_cast<double>(out.records[s].steps);
    double t_lts = static_cast<double>(out.records[req.seeds + s].steps);
    ratios.push_back(t_lts / t_root);
  }
  std::sort(ratios.begin(), ratios.end());
  CHECK(ratios[ratios.size() / 2] >= 1.0);

  CHECK(out.summary_json.find("median_speedup") != std::string::npos);
  CHECK(out.csv.find(csv_header()) == 0);

  // deterministic across repeated sweeps
  BenchOutput again = run_bench(req);
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    CHECK(out.records[i].steps == again.records[i].steps);
  }
}

TEST_CASE("verify suite selector") {
  auto checks = run_suite("appendix-g");
  CHECK(!checks.empty());
  for (const auto& c : checks) CHECK(c.pass);
  std::string json = to_json(checks);
  CHECK(json.find("\"suite\":\"appendix-g\"") != std::string::npos);
  CHECK_THROWS_AS(run_suite("nonsense"), ConfigError);
}
