#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvcap/capacity.hpp"
#include "cvcap/errors.hpp"
#include "cvcap/io.hpp"
#include "cvcap/multiplex.hpp"
#include "cvcap/optimizer.hpp"
#include "cvcap/verify.hpp"

namespace cvcap {

enum class Command { bounds, sweep_energy, sweep_loss, optimize, thresholds, verify };
enum class OutputFormat { csv, json };

/// Distribution literal as it appears on the command line or in a config
/// file: {"family":"pdc","B":..,"mu":..,"modes":..} |
/// {"family":"flat","K":..,"r":..} | {"family":"custom","r":[..]}.
struct FamilyLiteral {
  Family family = Family::flat;
  double b = 0.0;
  double mu = 0.0;
  int modes = 0;  // 0 = automatic truncation
  int k = 1;
  double r = 0.0;
  std::vector<double> custom_r;
};

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  bool log_scale = false;
};

struct RunConfig {
  Command command = Command::bounds;
  FamilyLiteral distribution;
  double eta = 1.0;
  std::optional<double> n_ph;
  std::optional<GridSpec> grid;
  std::optional<Bound> bound;  // nullopt = all
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 20120427;
  int trials = 500;
  std::optional<Bracket> bracket;
};

inline std::vector<double> make_grid(const GridSpec& spec) {
  if (spec.steps < 2) {
    throw validation_error("grid must have at least 2 steps");
  }
  if (!(spec.start < spec.stop)) {
    throw validation_error("grid start must be smaller than stop");
  }
  if (spec.log_scale && !(spec.start > 0.0)) {
    throw validation_error("log-scale grid requires start > 0");
  }
  std::vector<double> grid(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double t = static_cast<double>(i) / (spec.steps - 1);
    grid[static_cast<std::size_t>(i)] =
        spec.log_scale
            ? std::exp(std::log(spec.start) +
                       t * (std::log(spec.stop) - std::log(spec.start)))
            : spec.start + t * (spec.stop - spec.start);
  }
  grid.front() = spec.start;
  grid.back() = spec.stop;
  return grid;
}

inline SqueezingDistribution build_distribution(const FamilyLiteral& lit) {
  switch (lit.family) {
    case Family::flat:
      return flat_distribution(lit.k, lit.r);
    case Family::pdc:
      return lit.modes > 0 ? pdc_distribution(lit.b, lit.mu, lit.modes)
                           : pdc_distribution(lit.b, lit.mu);
    case Family::custom:
      return custom_distribution(lit.custom_r);
  }
  throw validation_error("unknown distribution family");
}

namespace cli_detail {

inline Bound require_single_bound(const RunConfig& config) {
  if (!config.bound) {
    throw validation_error("this command requires --bound QG, QA or QE");
  }
  return *config.bound;
}

inline void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw validation_error("transmissivity eta must lie in [0, 1]");
  }
}

inline void write_sweep(const RunConfig& config, const SweepResult& sweep) {
  if (config.output_path.empty()) {
    return;
  }
  std::ofstream out = open_output(config.output_path);
  if (config.format == OutputFormat::csv) {
    write_sweep_csv(out, sweep);
  } else {
    out << sweep_to_json(sweep).dump(2) << '\n';
  }
  if (!out) {
    throw io_error("failed writing output file: " + config.output_path);
  }
}

inline void write_report(const RunConfig& config, const CapacityReport& rep) {
  if (config.output_path.empty()) {
    return;
  }
  std::ofstream out = open_output(config.output_path);
  if (config.format == OutputFormat::csv) {
    write_bounds_csv(out, rep);
  } else {
    out << report_to_json(rep).dump(2) << '\n';
  }
  if (!out) {
    throw io_error("failed writing output file: " + config.output_path);
  }
}

inline SweepFamilySpec fixed_family_spec(const FamilyLiteral& lit) {
  switch (lit.family) {
    case Family::flat: return SweepFamilySpec::flat(lit.k);
    case Family::pdc: return SweepFamilySpec::pdc(lit.mu);
    case Family::custom:
      throw validation_error(
          "custom distributions have a fixed shape; use the bounds or "
          "sweep-loss commands");
  }
  throw validation_error("unknown distribution family");
}

inline int run_bounds(const RunConfig& config, std::ostream& out) {
  check_eta(config.eta);
  SqueezingDistribution dist;
  if (config.n_ph && config.distribution.family != Family::custom) {
    dist = config.distribution.family == Family::flat
               ? gain_for_energy_flat(config.distribution.k, *config.n_ph)
               : gain_for_energy_pdc(config.distribution.mu, *config.n_ph);
  } else {
    dist = build_distribution(config.distribution);
  }
  const CapacityReport rep = report(dist, config.eta);
  write_report(config, rep);
  out << "bounds: family=" << family_name(dist.family)
      << " modes=" << rep.per_mode.size() << " eta=" << format_number(rep.eta)
      << " n_ph=" << format_number(mean_photon(dist).n_ph)
      << " qg=" << format_number(rep.total_qg)
      << " qa=" << format_number(rep.total_qa)
      << " qe=" << format_number(rep.total_qe) << " q-nats\n";
  return 0;
}

inline int run_sweep_energy(const RunConfig& config, std::ostream& out) {
  check_eta(config.eta);
  if (!config.grid) {
    throw validation_error("sweep-energy requires an n_ph grid");
  }
  const SweepResult sweep = sweep_energy(make_grid(*config.grid), config.eta,
                                         {fixed_family_spec(config.distribution)});
  write_sweep(config, sweep);
  out << "sweep-energy: family=" << family_name(config.distribution.family)
      << " eta=" << format_number(config.eta) << " rows=" << sweep.rows.size()
      << '\n';
  return 0;
}

inline int run_sweep_loss(const RunConfig& config, std::ostream& out) {
  if (!config.grid) {
    throw validation_error("sweep-loss requires an eta grid");
  }
  const std::vector<double> grid = make_grid(*config.grid);
  SweepResult sweep;
  if (config.distribution.family == Family::custom) {
    const SqueezingDistribution dist = build_distribution(config.distribution);
    double r_max = 0.0;
    for (double r : dist.r) {
      r_max = std::max(r_max, r);
    }
    for (double eta : grid) {
      const CapacityReport rep = report(dist, eta);
      const double k_eff = r_max > 0.0 ? effective_mode_number(dist)
                                       : static_cast<double>(dist.r.size());
      sweep.rows.push_back(SweepRow{eta, rep.total_qg, rep.total_qa,
                                    rep.total_qe, k_eff, r_max});
    }
  } else {
    if (!config.n_ph) {
      throw validation_error("sweep-loss requires --n-ph for flat/pdc families");
    }
    sweep = sweep_loss(grid, *config.n_ph, {fixed_family_spec(config.distribution)});
  }
  write_sweep(config, sweep);
  out << "sweep-loss: family=" << family_name(config.distribution.family)
      << " rows=" << sweep.rows.size() << '\n';
  return 0;
}

inline int run_optimize(const RunConfig& config, std::ostream& out) {
  check_eta(config.eta);
  const Bound bound = require_single_bound(config);
  SweepFamilySpec spec;
  switch (config.distribution.family) {
    case Family::flat: spec = SweepFamilySpec::opt_flat(bound); break;
    case Family::pdc: spec = SweepFamilySpec::opt_pdc(bound); break;
    case Family::custom:
      throw validation_error("optimize supports the flat and pdc families");
  }
  if (config.grid) {
    const SweepResult sweep = sweep_energy(make_grid(*config.grid), config.eta, {spec});
    write_sweep(config, sweep);
    out << "optimize: family=" << family_name(config.distribution.family)
        << " bound=" << bound_name(bound) << " eta=" << format_number(config.eta)
        << " rows=" << sweep.rows.size() << '\n';
    return 0;
  }
  if (!config.n_ph) {
    throw validation_error("optimize requires --n-ph or a grid");
  }
  const OptResult opt = config.distribution.family == Family::flat
                            ? optimize_flat(*config.n_ph, config.eta, bound)
                            : optimize_pdc(*config.n_ph, config.eta, bound);
  SweepResult sweep;
  sweep.rows.push_back(SweepRow{*config.n_ph, 0.0, 0.0, 0.0, opt.best_k, opt.r});
  const SqueezingDistribution dist =
      opt.family == Family::flat
          ? flat_distribution(static_cast<int>(opt.best_k), opt.r)
          : pdc_distribution(opt.gain_b, opt.mu);
  const CapacityReport rep = report(dist, config.eta);
  sweep.rows.front().qg = rep.total_qg;
  sweep.rows.front().qa = rep.total_qa;
  sweep.rows.front().qe = rep.total_qe;
  write_sweep(config, sweep);
  out << "optimize: family=" << family_name(config.distribution.family)
      << " bound=" << bound_name(bound) << " eta=" << format_number(config.eta)
      << " n_ph=" << format_number(*config.n_ph)
      << " best_k=" << format_number(opt.best_k)
      << " r=" << format_number(opt.r) << " ("
      << format_number(squeezing_db(opt.r)) << " dB)"
      << " value=" << format_number(opt.best_value) << " q-nats"
      << " lambda=" << format_number(opt.lagrange_multiplier) << '\n';
  return 0;
}

inline int run_thresholds(const RunConfig& config, std::ostream& out) {
  check_eta(config.eta);
  const Bound bound = require_single_bound(config);
  const Bracket bracket = config.bracket.value_or(Bracket{1e-9, 1e4});
  const double n_ph = find_threshold(bound, config.eta, bracket);
  const double r = std::asinh(std::sqrt(n_ph));
  if (!config.output_path.empty()) {
    std::ofstream file = open_output(config.output_path);
    if (config.format == OutputFormat::csv) {
      file << "bound,eta,n_ph,squeezing_db\n"
           << bound_name(bound) << ',' << format_number(config.eta) << ','
           << format_number(n_ph) << ',' << format_number(squeezing_db(r))
           << '\n';
    } else {
      file << nlohmann::json{{"bound", bound_name(bound)},
                             {"eta", config.eta},
                             {"n_ph", n_ph},
                             {"squeezing_db", squeezing_db(r)}}
                  .dump(2)
           << '\n';
    }
    if (!file) {
      throw io_error("failed writing output file: " + config.output_path);
    }
  }
  out << "threshold: bound=" << bound_name(bound)
      << " eta=" << format_number(config.eta) << " n_ph=" << format_number(n_ph)
      << " squeezing_db=" << format_number(squeezing_db(r)) << '\n';
  return 0;
}

inline int run_verify(const RunConfig& config, std::ostream& out) {
  const std::vector<CheckResult> checks =
      run_verification(config.seed, config.trials);
  bool all_pass = true;
  for (const CheckResult& check : checks) {
    out << (check.pass ? "PASS " : "FAIL ") << check.name << " (" << check.detail
        << ")\n";
    all_pass = all_pass && check.pass;
  }
  out << (all_pass ? "verify: all checks passed\n"
                   : "verify: some checks FAILED\n");
  return all_pass ? 0 : 1;
}

}  // namespace cli_detail

/// Executes a validated run configuration. Throws on invalid input, numeric
/// failure or unwritable output.
inline int run(const RunConfig& config, std::ostream& out = std::cout) {
  switch (config.command) {
    case Command::bounds: return cli_detail::run_bounds(config, out);
    case Command::sweep_energy: return cli_detail::run_sweep_energy(config, out);
    case Command::sweep_loss: return cli_detail::run_sweep_loss(config, out);
    case Command::optimize: return cli_detail::run_optimize(config, out);
    case Command::thresholds: return cli_detail::run_thresholds(config, out);
    case Command::verify: return cli_detail::run_verify(config, out);
  }
  throw validation_error("unknown command");
}

/// Exit-code mapping: 0 success, 1 failed verification, 2 validation error,
/// 3 numeric error, 4 I/O error.
inline int run_with_exit_code(const RunConfig& config,
                              std::ostream& out = std::cout,
                              std::ostream& err = std::cerr) {
  try {
    return run(config, out);
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const numeric_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

// -- config file parsing ----------------------------------------------------

inline Command parse_command(const std::string& name) {
  if (name == "bounds") return Command::bounds;
  if (name == "sweep-energy") return Command::sweep_energy;
  if (name == "sweep-loss") return Command::sweep_loss;
  if (name == "optimize") return Command::optimize;
  if (name == "thresholds") return Command::thresholds;
  if (name == "verify") return Command::verify;
  throw validation_error("unknown command: " + name);
}

inline std::optional<Bound> parse_bound(const std::string& name) {
  if (name == "QG" || name == "qg") return Bound::QG;
  if (name == "QA" || name == "qa") return Bound::QA;
  if (name == "QE" || name == "qe") return Bound::QE;
  if (name == "all") return std::nullopt;
  throw validation_error("unknown bound: " + name);
}

inline Family parse_family(const std::string& name) {
  if (name == "pdc") return Family::pdc;
  if (name == "flat") return Family::flat;
  if (name == "custom") return Family::custom;
  throw validation_error("unknown family: " + name);
}

inline OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw validation_error("unknown output format: " + name);
}

/// Parses a JSON run configuration mirroring RunConfig.
inline RunConfig parse_config(const nlohmann::json& j) {
  RunConfig config;
  config.command = parse_command(j.at("command").get<std::string>());
  if (j.contains("distribution")) {
    const nlohmann::json& d = j.at("distribution");
    config.distribution.family = parse_family(d.at("family").get<std::string>());
    config.distribution.b = d.value("B", 0.0);
    config.distribution.mu = d.value("mu", 0.0);
    config.distribution.modes = d.value("modes", 0);
    config.distribution.k = d.value("K", 1);
    if (config.distribution.family == Family::custom) {
      config.distribution.custom_r = d.at("r").get<std::vector<double>>();
    } else {
      config.distribution.r = d.value("r", 0.0);
    }
  }
  const auto parse_grid = [](const nlohmann::json& n) {
    GridSpec grid;
    grid.start = n.at("start").get<double>();
    grid.stop = n.at("stop").get<double>();
    grid.steps = n.at("steps").get<int>();
    grid.log_scale = n.value("scale", std::string("linear")) == "log";
    return grid;
  };
  // The sweep variable (n_ph for energy sweeps, eta for loss sweeps) may be
  // given as a grid spec instead of a number.
  if (j.contains("eta")) {
    const nlohmann::json& e = j.at("eta");
    if (e.is_number()) {
      config.eta = e.get<double>();
    } else {
      config.grid = parse_grid(e);
    }
  }
  if (j.contains("n_ph")) {
    const nlohmann::json& n = j.at("n_ph");
    if (n.is_number()) {
      config.n_ph = n.get<double>();
    } else {
      config.grid = parse_grid(n);
    }
  }
  if (j.contains("bound")) {
    config.bound = parse_bound(j.at("bound").get<std::string>());
  }
  if (j.contains("output")) {
    config.output_path = j.at("output").value("path", std::string());
    config.format = parse_format(j.at("output").value("format", std::string("csv")));
  }
  config.seed = j.value("seed", config.seed);
  config.trials = j.value("trials", config.trials);
  if (j.contains("bracket")) {
    config.bracket = Bracket{j.at("bracket").at("lo").get<double>(),
                             j.at("bracket").at("hi").get<double>()};
  }
  return config;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw validation_error("cannot read config file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("malformed config file: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("invalid config file: ") + e.what());
  }
}

}  // namespace cvcap
