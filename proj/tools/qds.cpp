#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "qds/cli.hpp"

namespace {

/// Resolves --out: stdout by default, else the given file.
std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty()) return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw std::runtime_error("cannot open output file: " + path);
  return *holder;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit quantum digital signature simulator"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "Output file (default: stdout)")
      ->capture_default_str();

  // demo
  qds::cli::DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo", "Honest key/sign/verify run");
  demo_cmd->add_option("--lambda", demo.lambda)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--l", demo.l)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--seed", demo.seed);
  demo_cmd->add_option("--tamper", demo.tamper)
      ->check(CLI::IsMember({"none", "flip-one-eigenvalue", "wrong-basis-block"}));
  demo_cmd->add_option("--repeat", demo.repeat)->check(CLI::PositiveNumber);
  demo_cmd->add_flag("--show-keys", demo.show_keys);

  // bounds / fig4
  int n_max = 30;
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Per-copy-count acceptance bound table");
  bounds_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  auto* fig4_cmd = app.add_subcommand(
      "fig4", "Bound table with the c(n) decay column (alias of bounds)");
  fig4_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);

  // fig5
  int n0 = 5, lambda_max = 300;
  auto* fig5_cmd =
      app.add_subcommand("fig5", "Forgery acceptance curve F(n0)^lambda");
  fig5_cmd->add_option("--n0", n0)->check(CLI::PositiveNumber);
  fig5_cmd->add_option("--lambda-max", lambda_max)->check(CLI::PositiveNumber);

  // attack
  qds::cli::AttackOptions attack;
  std::string strategy_name = "blind-random";
  auto* attack_cmd =
      app.add_subcommand("attack", "Monte Carlo forging experiment");
  attack_cmd->add_option("--lambda", attack.config.lambda)
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--l", attack.config.l)->check(CLI::PositiveNumber);
  attack_cmd->add_option("--participants", attack.config.n_participants)
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--k", attack.config.k_colluders)
      ->check(CLI::NonNegativeNumber);
  attack_cmd->add_option("--flips", attack.config.flips)
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--trials", attack.config.trials)
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--seed", attack.config.master_seed);
  attack_cmd->add_option("--strategy", strategy_name)
      ->check(CLI::IsMember({"blind-fixed", "blind-random", "measured"}));
  attack_cmd->add_option("--threads", attack.config.threads)
      ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--z-gate", attack.z_gate)->check(CLI::PositiveNumber);
  attack_cmd->add_flag("--fixed-positions", attack.config.fixed_positions);
  attack_cmd->add_option("--events", attack.events_path,
                         "Write the per-trial event log to this CSV file");

  // cost
  int cost_lambda = 1, cost_l = 1;
  auto* cost_cmd = app.add_subcommand("cost", "Bit/qubit cost report");
  cost_cmd->add_option("--lambda", cost_lambda)->check(CLI::PositiveNumber);
  cost_cmd->add_option("--l", cost_l)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qds::cli::kUsageError;
  }

  try {
    std::unique_ptr<std::ofstream> file;
    std::ostream& out = open_output(out_path, file);
    if (*demo_cmd) return qds::cli::cmd_demo(demo, out);
    if (*bounds_cmd || *fig4_cmd) return qds::cli::cmd_bounds(n_max, out);
    if (*fig5_cmd) return qds::cli::cmd_fig5(n0, lambda_max, out);
    if (*attack_cmd) {
      attack.config.strategy = qds::strategy_from_name(
          strategy_name, attack.config.k_colluders);
      return qds::cli::cmd_attack(attack, out);
    }
    if (*cost_cmd) return qds::cli::cmd_cost(cost_lambda, cost_l, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qds::cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qds::cli::kGateFailure;
  }
  return qds::cli::kUsageError;
}
