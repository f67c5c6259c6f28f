#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cvcap/capacity.hpp"
#include "cvcap/errors.hpp"
#include "cvcap/multiplex.hpp"
#include "cvcap/optimizer.hpp"

namespace cvcap {

/// 12 significant digits, '.' decimal separator, locale independent.
inline std::string format_number(double x) {
  if (x == 0.0) {
    return "0";  // normalizes -0
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw io_error("cannot open output file: " + path);
  }
  return out;
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "x,qg_qnats,qa_qnats,qe_qnats,k_opt,r_opt,r_opt_db\n";
  for (const SweepRow& row : sweep.rows) {
    out << format_number(row.x) << ',' << format_number(row.qg) << ','
        << format_number(row.qa) << ',' << format_number(row.qe) << ','
        << format_number(row.k_opt) << ',' << format_number(row.r_opt) << ','
        << format_number(squeezing_db(row.r_opt)) << '\n';
  }
}

inline void write_bounds_csv(std::ostream& out, const CapacityReport& rep) {
  out << "k,r_k,n_k,qg,qa,qe,squeezing_db\n";
  for (const ModeCapacity& mode : rep.per_mode) {
    out << mode.k << ',' << format_number(mode.r) << ','
        << format_number(mode.n) << ',' << format_number(mode.qg) << ','
        << format_number(mode.qa) << ',' << format_number(mode.qe) << ','
        << format_number(squeezing_db(mode.r)) << '\n';
  }
}

inline nlohmann::json sweep_to_json(const SweepResult& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : sweep.rows) {
    rows.push_back({{"x", row.x},
                    {"qg_qnats", row.qg},
                    {"qa_qnats", row.qa},
                    {"qe_qnats", row.qe},
                    {"k_opt", row.k_opt},
                    {"r_opt", row.r_opt},
                    {"r_opt_db", squeezing_db(row.r_opt)}});
  }
  return nlohmann::json{{"rows", rows}};
}

inline nlohmann::json report_to_json(const CapacityReport& rep) {
  nlohmann::json modes = nlohmann::json::array();
  for (const ModeCapacity& mode : rep.per_mode) {
    modes.push_back({{"k", mode.k},
                     {"r_k", mode.r},
                     {"n_k", mode.n},
                     {"qg", mode.qg},
                     {"qa", mode.qa},
                     {"qe", mode.qe},
                     {"squeezing_db", squeezing_db(mode.r)}});
  }
  return nlohmann::json{{"eta", rep.eta},
                        {"per_mode", modes},
                        {"totals",
                         {{"qg", rep.total_qg},
                          {"qa", rep.total_qa},
                          {"qe", rep.total_qe}}}};
}

}  // namespace cvcap
