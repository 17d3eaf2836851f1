#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qds/adversary.hpp"
#include "qds/protocol.hpp"

namespace qds {

struct ExperimentConfig {
  int lambda = 1;
  int l = 1;
  int n_participants = 2;
  int k_colluders = 0;
  long trials = 1;
  int flips = 1;  // positions where m' differs from m
  std::uint64_t master_seed = 0;
  ForgeStrategy strategy = ForgeStrategy::blind_random();
  bool fixed_positions = false;  // flip positions 0..K-1 instead of random
  int threads = 1;               // clamped by the QSL_THREADS environment cap

  void validate() const;
};

struct EventRecord {
  long trial;
  int step;
  std::string sender;
  std::string receiver;
  std::string kind;  // "public-key" | "message" | "signature" | "forged"
  long size_bits;    // qubits for public-key transmissions
};

struct EventLog {
  std::vector<EventRecord> records;

  void append(EventRecord r) { records.push_back(std::move(r)); }
  // header: trial,step,sender,receiver,kind,size_bits
  void write_csv(std::ostream& out) const;
};

struct ExperimentResult {
  ExperimentConfig config;
  long accept_count = 0;
  long trial_count = 0;
  double empirical_rate = 0.0;
  double bound = 0.0;    // F(k)^{K lambda}, or (1/2)^{K lambda} when blind
  double z_score = 0.0;  // (count - trials*bound) / sqrt(trials*bound*(1-bound))
  double wall_time_s = 0.0;
  std::uint64_t qubits_sent = 0;      // over all trials
  std::uint64_t signature_bits = 0;   // over all trials
};

struct CostReport {
  long long c1;     // private-key bits, 4*lambda*l
  long long c2;     // signature bits, 2*lambda*l
  long long c3;     // public-key qubits, 2*lambda*l
  long long total;  // 8*lambda*l
};

/// Injective in the trial index for a fixed master seed; documented
/// derivation: splitmix64 of master + trial * odd constant (counter mode).
std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                std::uint64_t trial_index);

/// Honest run: keygen, distribute to all participants, sign, Bob verifies.
ExperimentResult run_honest(const ExperimentConfig& config,
                            EventLog* log = nullptr);

/// Forging run: the adversary pools k colluders' registers, splices a
/// signature for m' != m, and a non-colluding participant verifies.
ExperimentResult run_forging(const ExperimentConfig& config,
                             EventLog* log = nullptr);

CostReport cost_accounting(int lambda, int l);

/// Theoretical acceptance bound for one forged package.
double forgery_bound(const ForgeStrategy& strategy, int k_colluders, int flips,
                     int lambda);

nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json to_json(const CostReport& report);

/// QSL_THREADS environment cap (defaults to no cap).
int max_threads();

}  // namespace qds
