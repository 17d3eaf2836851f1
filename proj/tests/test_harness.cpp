#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "qds/harness.hpp"

using namespace qds;

TEST_CASE("derive_trial_seed is deterministic and collision-free") {
  CHECK(derive_trial_seed(123, 45) == derive_trial_seed(123, 45));
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000000; ++t)
    seen.insert(derive_trial_seed(0xabcdef, t));
  CHECK(seen.size() == 1000000);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.n_participants = 1;
  cfg.k_colluders = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k_colluders = 0;
  cfg.flips = 2;
  cfg.l = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.flips = 1;
  cfg.strategy = ForgeStrategy::measured(2);
  cfg.k_colluders = 0;
  cfg.n_participants = 3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k_colluders = 2;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("honest runs always accept and log the distribution volume") {
  ExperimentConfig cfg;
  cfg.lambda = 3;
  cfg.l = 2;
  cfg.n_participants = 4;
  cfg.trials = 500;
  cfg.master_seed = 2024;
  EventLog log;
  const ExperimentResult r = run_honest(cfg, &log);
  CHECK(r.accept_count == 500);
  CHECK(r.empirical_rate == 1.0);
  CHECK(r.qubits_sent == 500ULL * 4 * 2 * 3 * 2);

  int pk_sends = 0;
  long pk_bits = 0;
  for (const auto& e : log.records) {
    if (e.trial != 0) continue;
    if (e.kind == "public-key") {
      ++pk_sends;
      pk_bits += e.size_bits;
    }
  }
  CHECK(pk_sends == 4);                // one copy per participant
  CHECK(pk_bits == 4 * 2 * 3 * 2);     // N * 2*lambda*l qubits
}

TEST_CASE("minimal honest config accepts") {
  ExperimentConfig cfg;
  cfg.lambda = 1;
  cfg.l = 1;
  cfg.n_participants = 1;
  cfg.trials = 1;
  CHECK(run_honest(cfg).accept_count == 1);
}

TEST_CASE("blind forging matches the (1/2)^lambda bound") {
  ExperimentConfig cfg;
  cfg.lambda = 6;
  cfg.l = 2;
  cfg.n_participants = 2;
  cfg.k_colluders = 0;
  cfg.trials = 100000;
  cfg.master_seed = 7;
  cfg.strategy = ForgeStrategy::blind_random();
  const ExperimentResult r = run_forging(cfg);
  CHECK(r.bound == doctest::Approx(std::ldexp(1.0, -6)).epsilon(1e-15));
  CHECK(std::abs(r.z_score) < 3.0);
}

TEST_CASE("two flips multiply the blind bound") {
  ExperimentConfig cfg;
  cfg.lambda = 3;
  cfg.l = 3;
  cfg.flips = 2;
  cfg.n_participants = 2;
  cfg.trials = 200000;
  cfg.master_seed = 8;
  const ExperimentResult r = run_forging(cfg);
  CHECK(r.bound == doctest::Approx(std::ldexp(1.0, -6)).epsilon(1e-15));
  CHECK(std::abs(r.z_score) < 3.0);
}

TEST_CASE("one-copy measured forging matches F(1)^lambda") {
  ExperimentConfig cfg;
  cfg.lambda = 2;
  cfg.l = 1;
  cfg.n_participants = 2;
  cfg.k_colluders = 1;
  cfg.trials = 100000;
  cfg.master_seed = 9;
  cfg.strategy = ForgeStrategy::measured(1);
  const ExperimentResult r = run_forging(cfg);
  CHECK(r.bound == doctest::Approx(0.5625).epsilon(1e-12));  // (3/4)^2
  CHECK(std::abs(r.z_score) < 3.0);
}

TEST_CASE("acceptance never exceeds the bound across a config matrix") {
  for (int k = 0; k <= 2; ++k) {
    for (int lambda : {1, 3, 5}) {
      for (int flips : {1, 2}) {
        ExperimentConfig cfg;
        cfg.lambda = lambda;
        cfg.l = 2;
        cfg.flips = flips;
        cfg.n_participants = k + 2;
        cfg.k_colluders = k;
        cfg.trials = 20000;
        cfg.master_seed = 100 + k * 10 + lambda + flips;
        cfg.strategy =
            k == 0 ? ForgeStrategy::blind_random() : ForgeStrategy::measured(k);
        const ExperimentResult r = run_forging(cfg);
        const double sigma =
            std::sqrt(r.bound * (1.0 - r.bound) / cfg.trials);
        INFO("k=", k, " lambda=", lambda, " flips=", flips);
        // 4 sigma gate: 18 configs at 3 sigma would flake too often
        CHECK(r.empirical_rate <= r.bound + 4.0 * sigma);
        // the matched strategy saturates the bound
        CHECK(std::abs(r.z_score) < 4.0);
      }
    }
  }
}

TEST_CASE("experiments are deterministic and order-independent") {
  ExperimentConfig cfg;
  cfg.lambda = 3;
  cfg.l = 2;
  cfg.n_participants = 3;
  cfg.k_colluders = 2;
  cfg.trials = 20000;
  cfg.master_seed = 555;
  cfg.strategy = ForgeStrategy::measured(2);

  const ExperimentResult serial1 = run_forging(cfg);
  const ExperimentResult serial2 = run_forging(cfg);
  CHECK(serial1.accept_count == serial2.accept_count);

  cfg.threads = 4;
  const ExperimentResult parallel = run_forging(cfg);
  CHECK(parallel.accept_count == serial1.accept_count);
  CHECK(parallel.qubits_sent == serial1.qubits_sent);
}

TEST_CASE("cost accounting identities") {
  const CostReport r1 = cost_accounting(1, 1);
  CHECK(r1.c1 == 4);
  CHECK(r1.c2 == 2);
  CHECK(r1.c3 == 2);
  CHECK(r1.total == 8);

  const CostReport big = cost_accounting(300, 100);
  CHECK(big.total == 240000);

  const CostReport a = cost_accounting(5, 7);
  const CostReport b = cost_accounting(5, 14);
  CHECK(b.total == 2 * a.total);
  CHECK_THROWS_AS(cost_accounting(0, 1), std::invalid_argument);
}

TEST_CASE("result JSON carries the fixed field names") {
  ExperimentConfig cfg;
  cfg.lambda = 2;
  cfg.l = 1;
  cfg.n_participants = 2;
  cfg.trials = 10;
  cfg.master_seed = 77;
  const nlohmann::json j = to_json(run_forging(cfg));
  for (const char* field :
       {"lambda", "l", "n_participants", "k_colluders", "trials", "flips",
        "strategy", "accept_count", "empirical_rate", "bound", "z_score",
        "master_seed"}) {
    INFO("field ", field);
    CHECK(j.contains(field));
  }
  CHECK(j["strategy"] == "blind-random");
}

TEST_CASE("event log CSV format") {
  ExperimentConfig cfg;
  cfg.trials = 2;
  cfg.n_participants = 2;
  EventLog log;
  (void)run_honest(cfg, &log);
  std::ostringstream out;
  log.write_csv(out);
  const std::string csv = out.str();
  CHECK(csv.rfind("trial,step,sender,receiver,kind,size_bits\n", 0) == 0);
  CHECK(csv.find("Alice,P0,public-key,2") != std::string::npos);
}
