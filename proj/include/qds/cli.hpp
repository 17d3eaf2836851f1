#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qds/harness.hpp"

namespace qds::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kGateFailure = 1;
inline constexpr int kUsageError = 2;

/// Fixed CSV float format: 12 significant digits, '.' decimal point.
std::string format_g12(double v);

struct DemoOptions {
  int lambda = 2;
  int l = 2;
  std::uint64_t seed = 0;
  std::string tamper = "none";  // none | flip-one-eigenvalue | wrong-basis-block
  long repeat = 1;
  bool show_keys = false;
};

int cmd_demo(const DemoOptions& opts, std::ostream& out);

/// One row per copy count: n, exact alphas, F(n), 1-F(n), and the base-2
/// decay coefficient c(n) = log2(1-F(n))/(-(n+1)) - 1.
int cmd_bounds(int n_max, std::ostream& out);

/// F(n0)^lambda for lambda = 1..lambda_max, with the lambda=300 value and
/// the published reference value 0.0370882 reported side by side.
int cmd_fig5(int n0, int lambda_max, std::ostream& out);

struct AttackOptions {
  ExperimentConfig config;
  double z_gate = 4.0;
  std::string events_path;  // when set, per-trial event log written as CSV
};

int cmd_attack(const AttackOptions& opts, std::ostream& out);

int cmd_cost(int lambda, int l, std::ostream& out);

}  // namespace qds::cli
