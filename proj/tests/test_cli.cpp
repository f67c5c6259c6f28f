#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cvcap/cli.hpp"

using namespace cvcap;
using Catch::Approx;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

}  // namespace

TEST_CASE("bounds command writes the per-mode CSV", "[cli]") {
  RunConfig config;
  config.command = Command::bounds;
  config.distribution.family = Family::flat;
  config.distribution.k = 1;
  config.distribution.r = 2.4043;
  config.eta = 1.0;
  config.output_path = temp_file("cvcap_bounds.csv").string();
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);

  const std::string csv = slurp(config.output_path);
  REQUIRE(csv.rfind("k,r_k,n_k,qg,qa,qe,squeezing_db\n", 0) == 0);
  // qg = 2r - 1 = 3.8086 at r = 2.4043 (the capacity itself sits between
  // Q_G and Q_A = 4.80).
  REQUIRE(csv.find("3.8086") != std::string::npos);
  REQUIRE(out.str().find("qg=3.8086") != std::string::npos);
  REQUIRE(out.str().find("q-nats") != std::string::npos);
}

TEST_CASE("bounds command can tune a family to a target energy", "[cli]") {
  RunConfig config;
  config.command = Command::bounds;
  config.distribution.family = Family::flat;
  config.distribution.k = 33;
  config.n_ph = 30.0;
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
  REQUIRE(out.str().find("qg=22.9733396083") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical outputs", "[cli]") {
  RunConfig config;
  config.command = Command::sweep_energy;
  config.distribution.family = Family::pdc;
  config.distribution.mu = 0.577;
  config.eta = 0.9;
  config.grid = GridSpec{0.0, 20.0, 9, false};

  config.output_path = temp_file("cvcap_sweep_a.csv").string();
  std::ostringstream out_a;
  REQUIRE(run(config, out_a) == 0);
  const std::string first = slurp(config.output_path);

  config.output_path = temp_file("cvcap_sweep_b.csv").string();
  std::ostringstream out_b;
  REQUIRE(run(config, out_b) == 0);
  const std::string second = slurp(config.output_path);

  REQUIRE(first == second);
  REQUIRE(first.rfind("x,qg_qnats,qa_qnats,qe_qnats,k_opt,r_opt,r_opt_db\n", 0) == 0);
}

TEST_CASE("sweep-loss with a custom distribution", "[cli]") {
  RunConfig config;
  config.command = Command::sweep_loss;
  config.distribution.family = Family::custom;
  config.distribution.custom_r = {1.2, 0.8, 0.3};
  config.grid = GridSpec{0.0, 1.0, 5, false};
  config.output_path = temp_file("cvcap_loss.csv").string();
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
  const std::string csv = slurp(config.output_path);
  REQUIRE(csv.rfind("x,", 0) == 0);
  // 5 rows + header
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("JSON output parses back with matching totals", "[cli]") {
  RunConfig config;
  config.command = Command::bounds;
  config.distribution.family = Family::pdc;
  config.distribution.b = 2.0;
  config.distribution.mu = 0.5;
  config.eta = 0.8;
  config.format = OutputFormat::json;
  config.output_path = temp_file("cvcap_bounds.json").string();
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);

  const nlohmann::json j = nlohmann::json::parse(slurp(config.output_path));
  const CapacityReport rep = report(pdc_distribution(2.0, 0.5), 0.8);
  REQUIRE(j.at("eta").get<double>() == Approx(0.8));
  REQUIRE(j.at("totals").at("qg").get<double>() == Approx(rep.total_qg));
  REQUIRE(j.at("per_mode").size() == rep.per_mode.size());
}

TEST_CASE("optimize command reports the flat optimum", "[cli]") {
  RunConfig config;
  config.command = Command::optimize;
  config.distribution.family = Family::flat;
  config.bound = Bound::QG;
  config.n_ph = 30.0;
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
  REQUIRE(out.str().find("best_k=33") != std::string::npos);
  REQUIRE(out.str().find("value=22.9733396083") != std::string::npos);
}

TEST_CASE("optimize over a grid emits one row per point", "[cli]") {
  RunConfig config;
  config.command = Command::optimize;
  config.distribution.family = Family::flat;
  config.bound = Bound::QA;
  config.grid = GridSpec{1.0, 16.0, 3, true};
  config.output_path = temp_file("cvcap_opt.csv").string();
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
  const std::string csv = slurp(config.output_path);
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 4);
  REQUIRE(csv.find("\n1,") != std::string::npos);
  REQUIRE(csv.find("\n4,") != std::string::npos);   // log-scale midpoint
  REQUIRE(csv.find("\n16,") != std::string::npos);
}

TEST_CASE("thresholds command prints the QA threshold", "[cli]") {
  RunConfig config;
  config.command = Command::thresholds;
  config.bound = Bound::QA;
  config.eta = 1.0;
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
  REQUIRE(out.str().find("n_ph=0.125") != std::string::npos);
  REQUIRE(out.str().find("squeezing_db=3.010") != std::string::npos);
}

TEST_CASE("verify command passes and prints one line per check", "[cli]") {
  RunConfig config;
  config.command = Command::verify;
  config.trials = 100;
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
  const std::string text = out.str();
  REQUIRE(text.find("FAIL") == std::string::npos);
  REQUIRE(std::count(text.begin(), text.end(), '\n') >= 7);
}

TEST_CASE("exit codes distinguish error classes", "[cli]") {
  std::ostringstream out, err;

  RunConfig bad_eta;
  bad_eta.command = Command::bounds;
  bad_eta.eta = 1.5;
  REQUIRE(run_with_exit_code(bad_eta, out, err) == 2);

  RunConfig no_threshold;
  no_threshold.command = Command::thresholds;
  no_threshold.bound = Bound::QA;
  no_threshold.eta = 0.5;  // zero capacity at 50% loss for every r
  REQUIRE(run_with_exit_code(no_threshold, out, err) == 3);

  RunConfig bad_path;
  bad_path.command = Command::bounds;
  bad_path.distribution.family = Family::flat;
  bad_path.distribution.k = 1;
  bad_path.distribution.r = 1.0;
  bad_path.output_path = "/nonexistent-directory/out.csv";
  REQUIRE(run_with_exit_code(bad_path, out, err) == 4);

  RunConfig bad_grid;
  bad_grid.command = Command::sweep_energy;
  bad_grid.distribution.family = Family::flat;
  bad_grid.grid = GridSpec{1.0, 2.0, 1, false};  // steps < 2
  REQUIRE(run_with_exit_code(bad_grid, out, err) == 2);
}

TEST_CASE("config files mirror RunConfig", "[cli]") {
  const nlohmann::json j{
      {"command", "bounds"},
      {"distribution", {{"family", "flat"}, {"K", 2}, {"r", 1.0}}},
      {"eta", 0.9},
      {"bound", "all"},
      {"output",
       {{"path", temp_file("cvcap_cfg_out.csv").string()}, {"format", "csv"}}}};
  const auto path = temp_file("cvcap_config.json");
  std::ofstream(path) << j.dump(2);

  const RunConfig config = load_config_file(path.string());
  REQUIRE(config.command == Command::bounds);
  REQUIRE(config.distribution.k == 2);
  REQUIRE(config.eta == Approx(0.9));
  REQUIRE_FALSE(config.bound.has_value());

  std::ostringstream out;
  REQUIRE(run(config, out) == 0);

  REQUIRE_THROWS_AS(load_config_file("/nonexistent/config.json"),
                    validation_error);
  std::ofstream(temp_file("cvcap_bad.json")) << "{ not json";
  REQUIRE_THROWS_AS(load_config_file(temp_file("cvcap_bad.json").string()),
                    validation_error);
  std::ofstream(temp_file("cvcap_unknown.json")) << R"({"command":"frobnicate"})";
  REQUIRE_THROWS_AS(load_config_file(temp_file("cvcap_unknown.json").string()),
                    validation_error);
}

TEST_CASE("config grid specs select sweeps", "[cli]") {
  const nlohmann::json j{
      {"command", "sweep-energy"},
      {"distribution", {{"family", "flat"}, {"K", 1}}},
      {"eta", 1.0},
      {"n_ph",
       {{"start", 0.0}, {"stop", 10.0}, {"steps", 5}, {"scale", "linear"}}}};
  const auto path = temp_file("cvcap_sweep_cfg.json");
  std::ofstream(path) << j.dump();
  const RunConfig config = load_config_file(path.string());
  REQUIRE(config.grid.has_value());
  REQUIRE(config.grid->steps == 5);
  std::ostringstream out;
  REQUIRE(run(config, out) == 0);
}

#ifdef CVCAP_BIN
TEST_CASE("installed binary end-to-end", "[cli]") {
  const std::string csv = temp_file("cvcap_e2e.csv").string();
  const std::string command = std::string(CVCAP_BIN) +
                              " thresholds --bound QG --eta 1 -o " + csv +
                              " > /dev/null 2>&1";
  REQUIRE(std::system(command.c_str()) == 0);
  const std::string text = slurp(csv);
  REQUIRE(text.rfind("bound,eta,n_ph,squeezing_db\n", 0) == 0);
  REQUIRE(text.find("QG,1,0.271540") != std::string::npos);

  const std::string bad = std::string(CVCAP_BIN) +
                          " bounds --family flat --K 0 --r 1 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  REQUIRE(WEXITSTATUS(status) == 2);
}
#endif
