#include "qds/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qds/state_id.hpp"

namespace qds {

void ExperimentConfig::validate() const {
  ProtocolParams{lambda, l, n_participants}.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (flips < 1 || flips > l)
    throw std::invalid_argument("flips must be in [1, l]");
  if (k_colluders < 0 || k_colluders >= n_participants)
    throw std::invalid_argument("need 0 <= k_colluders < n_participants");
  if (strategy.kind == ForgeStrategy::Kind::Measured) {
    if (k_colluders < 1)
      throw std::invalid_argument("measured strategy needs k_colluders >= 1");
    if (strategy.copies != k_colluders)
      throw std::invalid_argument(
          "measured strategy copies must equal k_colluders");
  }
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t trial_index) {
  // trial_index * odd is a bijection mod 2^64 and splitmix64 is a
  // bijection, so seeds are distinct across trials for a fixed master.
  return splitmix64(master_seed + trial_index * 0x9e3779b97f4a7c15ULL);
}

void EventLog::write_csv(std::ostream& out) const {
  out << "trial,step,sender,receiver,kind,size_bits\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.step << ',' << r.sender << ',' << r.receiver
        << ',' << r.kind << ',' << r.size_bits << '\n';
  }
}

CostReport cost_accounting(int lambda, int l) {
  if (lambda < 1 || l < 1)
    throw std::invalid_argument("cost_accounting: inputs must be positive");
  const long long unit = 1LL * lambda * l;
  return {4 * unit, 2 * unit, 2 * unit, 8 * unit};
}

double forgery_bound(const ForgeStrategy& strategy, int k_colluders, int flips,
                     int lambda) {
  const double per_cell = strategy.kind == ForgeStrategy::Kind::Measured
                              ? f_bound(k_colluders)
                              : 0.5;
  return std::pow(per_cell, double(flips) * lambda);
}

int max_threads() {
  if (const char* env = std::getenv("QSL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return cap;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Tally {
  long accepts = 0;
  std::uint64_t qubits_sent = 0;
  std::uint64_t signature_bits = 0;
};

std::string participant_name(int i) { return "P" + std::to_string(i); }

/// Distributes one fresh register per participant; participant 0 is Bob.
std::vector<QubitRegister> distribute(const PublicKeyDescription& pk,
                                      long trial, EventLog* log) {
  const auto& p = pk.params();
  std::vector<QubitRegister> registers;
  registers.reserve(p.n_participants);
  for (int i = 0; i < p.n_participants; ++i) {
    registers.push_back(issue_copy(pk, i));
    if (log)
      log->append({trial, 1, "Alice", participant_name(i), "public-key",
                   2L * p.lambda * p.l});
  }
  return registers;
}

void run_honest_trial(const ExperimentConfig& cfg, long trial, Tally& tally,
                      EventLog* log) {
  Rng rng(derive_trial_seed(cfg.master_seed, trial));
  const ProtocolParams params{cfg.lambda, cfg.l, cfg.n_participants};
  PrivateKey sk = sk_gen(params, rng);
  const PublicKeyDescription pk = pk_gen(sk);
  auto registers = distribute(pk, trial, log);
  tally.qubits_sent += std::uint64_t(cfg.n_participants) * 2 * cfg.lambda * cfg.l;

  const Message m = random_message(cfg.l, rng);
  const Signature sig = sign(sk, m);
  tally.signature_bits += 2ULL * cfg.lambda * cfg.l;
  if (log) {
    log->append({trial, 2, "Alice", "P0", "message", cfg.l});
    log->append({trial, 2, "Alice", "P0", "signature", 2L * cfg.lambda * cfg.l});
  }
  if (verify(registers[0], m, sig, rng) == Verdict::Accept) ++tally.accepts;
}

void run_forging_trial(const ExperimentConfig& cfg, long trial, Tally& tally,
                       EventLog* log) {
  Rng rng(derive_trial_seed(cfg.master_seed, trial));
  const ProtocolParams params{cfg.lambda, cfg.l, cfg.n_participants};
  PrivateKey sk = sk_gen(params, rng);
  const PublicKeyDescription pk = pk_gen(sk);
  auto registers = distribute(pk, trial, log);
  tally.qubits_sent += std::uint64_t(cfg.n_participants) * 2 * cfg.lambda * cfg.l;

  const Message m = random_message(cfg.l, rng);
  Message m_prime = m;
  if (cfg.fixed_positions) {
    for (int i = 0; i < cfg.flips; ++i) m_prime.bits[i] ^= 1;
  } else {
    // Fisher-Yates prefix: K distinct positions uniformly.
    std::vector<int> pos(cfg.l);
    for (int i = 0; i < cfg.l; ++i) pos[i] = i;
    for (int i = 0; i < cfg.flips; ++i) {
      const int j = i + int(rng.next_below(cfg.l - i));
      std::swap(pos[i], pos[j]);
      m_prime.bits[pos[i]] ^= 1;
    }
  }

  const Signature sig = sign(sk, m);
  tally.signature_bits += 2ULL * cfg.lambda * cfg.l;
  if (log) {
    log->append({trial, 2, "Alice", "public", "message", cfg.l});
    log->append({trial, 2, "Alice", "public", "signature",
                 2L * cfg.lambda * cfg.l});
  }

  // Colluders are participants 1..k; participant 0 stays honest and
  // verifies.
  std::vector<QubitRegister*> colluders;
  for (int i = 1; i <= cfg.k_colluders; ++i) colluders.push_back(&registers[i]);
  const ForgedPackage forged =
      splice_forge(m, sig, m_prime, colluders, cfg.strategy, rng);
  if (log)
    log->append({trial, 3, "Jack", "P0", "forged", 2L * cfg.lambda * cfg.l});

  if (verify(registers[0], forged.m_prime, forged.sig, rng) == Verdict::Accept)
    ++tally.accepts;
}

template <typename TrialFn>
ExperimentResult run_experiment(const ExperimentConfig& cfg, double bound,
                                EventLog* log, TrialFn trial_fn) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  Tally total;
  int threads = std::clamp(cfg.threads, 1, max_threads());
  if (log) threads = 1;  // keep the log in trial order
  if (threads <= 1 || cfg.trials < 2 * threads) {
    for (long t = 0; t < cfg.trials; ++t) trial_fn(cfg, t, total, log);
  } else {
    std::vector<Tally> partial(threads);
    std::vector<std::thread> pool;
    const long chunk = (cfg.trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        const long lo = w * chunk;
        const long hi = std::min(cfg.trials, lo + chunk);
        for (long t = lo; t < hi; ++t) trial_fn(cfg, t, partial[w], nullptr);
      });
    }
    for (auto& th : pool) th.join();
    for (const Tally& p : partial) {
      total.accepts += p.accepts;
      total.qubits_sent += p.qubits_sent;
      total.signature_bits += p.signature_bits;
    }
  }

  ExperimentResult result;
  result.config = cfg;
  result.accept_count = total.accepts;
  result.trial_count = cfg.trials;
  result.empirical_rate = double(total.accepts) / double(cfg.trials);
  result.bound = bound;
  const double var = double(cfg.trials) * bound * (1.0 - bound);
  if (var > 0.0) {
    result.z_score =
        (double(total.accepts) - double(cfg.trials) * bound) / std::sqrt(var);
  } else {
    result.z_score =
        result.empirical_rate == bound ? 0.0
                                       : std::numeric_limits<double>::infinity();
  }
  result.qubits_sent = total.qubits_sent;
  result.signature_bits = total.signature_bits;
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace

ExperimentResult run_honest(const ExperimentConfig& config, EventLog* log) {
  return run_experiment(config, 1.0, log, run_honest_trial);
}

ExperimentResult run_forging(const ExperimentConfig& config, EventLog* log) {
  const double bound = forgery_bound(config.strategy, config.k_colluders,
                                     config.flips, config.lambda);
  return run_experiment(config, bound, log, run_forging_trial);
}

nlohmann::json to_json(const ExperimentResult& r) {
  return {{"lambda", r.config.lambda},
          {"l", r.config.l},
          {"n_participants", r.config.n_participants},
          {"k_colluders", r.config.k_colluders},
          {"trials", r.trial_count},
          {"flips", r.config.flips},
          {"strategy", strategy_name(r.config.strategy)},
          {"accept_count", r.accept_count},
          {"empirical_rate", r.empirical_rate},
          {"bound", r.bound},
          {"z_score", r.z_score},
          {"master_seed", r.config.master_seed}};
}

nlohmann::json to_json(const CostReport& c) {
  return {{"c1_private_key_bits", c.c1},
          {"c2_signature_bits", c.c2},
          {"c3_public_key_qubits", c.c3},
          {"total", c.total}};
}

}  // namespace qds
