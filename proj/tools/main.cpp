// cvcap: capacity bounds for multiplexed CV teleportation channels.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cvcap/cli.hpp"

namespace {

struct FlagState {
  std::string family = "flat";
  double b = 0.0;
  double mu = 0.0;
  int modes = 0;
  int k = 1;
  double r = 0.0;
  std::vector<double> custom_r;
  double eta = 1.0;
  double n_ph = -1.0;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  std::string scale = "linear";
  std::string bound = "all";
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 20120427;
  int trials = 500;
  double bracket_lo = 1e-9;
  double bracket_hi = 1e4;
  bool bracket_given = false;
};

void add_family_flags(CLI::App* cmd, FlagState& flags) {
  cmd->add_option("--family", flags.family, "Distribution family: flat|pdc|custom")
      ->check(CLI::IsMember({"flat", "pdc", "custom"}));
  cmd->add_option("--B", flags.b, "PDC overall gain B");
  cmd->add_option("--mu", flags.mu, "PDC decay mu in [0,1)");
  cmd->add_option("--modes", flags.modes, "PDC mode count (0 = automatic)");
  cmd->add_option("--K", flags.k, "Flat-family mode count");
  cmd->add_option("--r", flags.r, "Flat-family per-mode squeezing");
  cmd->add_option("--r-list", flags.custom_r, "Custom family squeezing amplitudes");
}

void add_grid_flags(CLI::App* cmd, FlagState& flags) {
  cmd->add_option("--start", flags.start, "Grid start")->required();
  cmd->add_option("--stop", flags.stop, "Grid stop")->required();
  cmd->add_option("--steps", flags.steps, "Grid point count (>= 2)")->required();
  cmd->add_option("--scale", flags.scale, "Grid scale: linear|log")
      ->check(CLI::IsMember({"linear", "log"}));
}

void add_output_flags(CLI::App* cmd, FlagState& flags) {
  cmd->add_option("-o,--output", flags.output, "Output file path");
  cmd->add_option("--format", flags.format, "Output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
}

cvcap::RunConfig to_config(cvcap::Command command, const FlagState& flags,
                           bool with_grid) {
  cvcap::RunConfig config;
  config.command = command;
  config.distribution.family = cvcap::parse_family(flags.family);
  config.distribution.b = flags.b;
  config.distribution.mu = flags.mu;
  config.distribution.modes = flags.modes;
  config.distribution.k = flags.k;
  config.distribution.r = flags.r;
  config.distribution.custom_r = flags.custom_r;
  config.eta = flags.eta;
  if (flags.n_ph >= 0.0) {
    config.n_ph = flags.n_ph;
  }
  if (with_grid) {
    config.grid = cvcap::GridSpec{flags.start, flags.stop, flags.steps,
                                  flags.scale == "log"};
  }
  config.bound = cvcap::parse_bound(flags.bound);
  config.output_path = flags.output;
  config.format = cvcap::parse_format(flags.format);
  config.seed = flags.seed;
  config.trials = flags.trials;
  if (flags.bracket_given) {
    config.bracket = cvcap::Bracket{flags.bracket_lo, flags.bracket_hi};
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-capacity bounds for multiplexed CV teleportation"};
  app.require_subcommand(1);

  FlagState flags;
  std::string config_path;

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Capacity bounds of a squeezing distribution");
  add_family_flags(bounds, flags);
  bounds->add_option("--eta", flags.eta, "Transmissivity in [0,1]");
  bounds->add_option("--n-ph", flags.n_ph,
                     "Tune the family to this mean photon number");
  add_output_flags(bounds, flags);

  CLI::App* sweep_energy = app.add_subcommand(
      "sweep-energy", "Bounds versus mean photon number at fixed loss");
  add_family_flags(sweep_energy, flags);
  sweep_energy->add_option("--eta", flags.eta, "Transmissivity in [0,1]");
  add_grid_flags(sweep_energy, flags);
  add_output_flags(sweep_energy, flags);

  CLI::App* sweep_loss = app.add_subcommand(
      "sweep-loss", "Bounds versus transmissivity at fixed energy");
  add_family_flags(sweep_loss, flags);
  sweep_loss->add_option("--n-ph", flags.n_ph, "Mean photon number of the family");
  add_grid_flags(sweep_loss, flags);
  add_output_flags(sweep_loss, flags);

  CLI::App* optimize = app.add_subcommand(
      "optimize", "Optimal mode number for a bound at fixed energy");
  optimize->add_option("--family", flags.family, "Search space: flat|pdc")
      ->check(CLI::IsMember({"flat", "pdc"}));
  optimize->add_option("--bound", flags.bound, "Bound to optimize: QG|QA|QE")
      ->required()
      ->check(CLI::IsMember({"QG", "QA", "QE", "qg", "qa", "qe"}));
  optimize->add_option("--eta", flags.eta, "Transmissivity in [0,1]");
  optimize->add_option("--n-ph", flags.n_ph, "Mean photon number");
  optimize->add_option("--start", flags.start, "Energy grid start");
  optimize->add_option("--stop", flags.stop, "Energy grid stop");
  optimize->add_option("--steps", flags.steps, "Energy grid point count");
  optimize->add_option("--scale", flags.scale, "Grid scale: linear|log")
      ->check(CLI::IsMember({"linear", "log"}));
  add_output_flags(optimize, flags);

  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Zero-capacity energy threshold of a bound");
  thresholds->add_option("--bound", flags.bound, "Bound: QG|QA|QE")
      ->required()
      ->check(CLI::IsMember({"QG", "QA", "QE", "qg", "qa", "qe"}));
  thresholds->add_option("--eta", flags.eta, "Transmissivity in [0,1]");
  CLI::Option* lo =
      thresholds->add_option("--bracket-lo", flags.bracket_lo, "Bracket lower end");
  CLI::Option* hi =
      thresholds->add_option("--bracket-hi", flags.bracket_hi, "Bracket upper end");
  add_output_flags(thresholds, flags);

  CLI::App* verify = app.add_subcommand(
      "verify", "Convergence and stationarity verification suite");
  verify->add_option("--seed", flags.seed, "Seed for the randomized trials");
  verify->add_option("--trials", flags.trials, "Number of randomized trials");

  CLI::App* run_cmd = app.add_subcommand("run", "Execute a JSON config file");
  run_cmd->add_option("--config", config_path, "Path to the config file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  cvcap::RunConfig config;
  try {
    if (run_cmd->parsed()) {
      config = cvcap::load_config_file(config_path);
    } else if (bounds->parsed()) {
      config = to_config(cvcap::Command::bounds, flags, false);
    } else if (sweep_energy->parsed()) {
      config = to_config(cvcap::Command::sweep_energy, flags, true);
    } else if (sweep_loss->parsed()) {
      config = to_config(cvcap::Command::sweep_loss, flags, true);
    } else if (optimize->parsed()) {
      config = to_config(cvcap::Command::optimize, flags, flags.steps > 0);
    } else if (thresholds->parsed()) {
      flags.bracket_given = lo->count() > 0 || hi->count() > 0;
      config = to_config(cvcap::Command::thresholds, flags, false);
    } else {
      config = to_config(cvcap::Command::verify, flags, false);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return cvcap::run_with_exit_code(config);
}
