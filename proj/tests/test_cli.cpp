#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "casimir/checks.hpp"
#include "casimir/cli.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

RunConfig basic() {
  RunConfig cfg;
  cfg.gamma_ratio = 1e-3;
  cfg.distance_ratio = 0.1;
  return cfg;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const std::string out = std::string(CASIMIR_TEST_TMPDIR) + "/cli_out.txt";
  const std::string cmd = std::string(CASIMIR_CLI_PATH) + " " + args + " > " + out + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

int count_fields(const std::string& line) {
  int n = 1;
  for (char c : line) n += c == ',';
  return n;
}

}  // namespace

TEST_CASE("config round trip is exact") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    RunConfig cfg;
    auto any = [&] { return std::exp(u(rng)); };
    cfg.omega_p = any();
    if (i % 2) cfg.gamma = any(); else cfg.gamma_ratio = any();
    if (i % 3) cfg.distance = any(); else cfg.distance_ratio = any();
    if (i % 4 == 0) cfg.temperature = any();
    if (i % 4 == 1) cfg.temperature_ratio = any();
    cfg.model = i % 5 ? MaterialModel::Drude : MaterialModel::Plasma;
    cfg.cutoff_lambda = any();
    cfg.rel_tol = any();
    cfg.jobs = 1 + i % 7;
    if (i % 2) cfg.out = "results/run " + std::to_string(i) + ".csv";
    CHECK(parse_config(serialize_config(cfg)) == cfg);
  }
}

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(
      "# comment\n[material]\nmodel = plasma\nomega_p = 9 eV\n\n[geometry]\ndistance = 1e-7\n"
      "; another comment\n[numerics]\njobs = 3\n");
  CHECK(cfg.model == MaterialModel::Plasma);
  CHECK(*cfg.omega_p == doctest::Approx(9.0 * 1.519267447e15).epsilon(1e-9));
  CHECK(*cfg.distance == 1e-7);
  CHECK(cfg.jobs == 3);
  CHECK_THROWS_AS(parse_config("[material]\ncolour = red\n"), UsageError);
  CHECK_THROWS_AS(parse_config("[geometry]\ndistance = ten\n"), UsageError);
  CHECK_THROWS_AS(parse_config("[geometry\n"), UsageError);
  CHECK_THROWS_AS(parse_config("[material]\nmodel = jellium\n"), UsageError);
}

TEST_CASE("frequency parsing") {
  CHECK(parse_frequency("1.37e16") == 1.37e16);
  CHECK(parse_frequency("1eV") == doctest::Approx(1.519267447e15).epsilon(1e-9));
  CHECK(parse_frequency(" 0.5 eV ") == doctest::Approx(0.5 * 1.519267447e15).epsilon(1e-9));
  CHECK_THROWS_AS(parse_frequency("fast"), UsageError);
}

TEST_CASE("validation names the offending field") {
  auto message = [](const RunConfig& cfg) {
    try {
      validate(cfg);
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  RunConfig cfg = basic();
  CHECK(message(cfg).empty());
  cfg.distance_ratio.reset();
  CHECK(message(cfg).starts_with("distance:"));
  cfg = basic();
  cfg.distance = 1e-7;
  CHECK(message(cfg).starts_with("distance:"));
  cfg = basic();
  cfg.gamma_ratio.reset();
  CHECK(message(cfg).starts_with("gamma:"));
  cfg = basic();
  cfg.model = MaterialModel::Plasma;
  CHECK(message(cfg).starts_with("gamma:"));
  cfg = basic();
  cfg.temperature = 300;
  CHECK(message(cfg).starts_with("temperature:"));
  cfg = basic();
  cfg.cutoff_lambda = -1;
  CHECK(message(cfg).starts_with("cutoff_lambda:"));
  cfg = basic();
  cfg.jobs = 0;
  CHECK(message(cfg).starts_with("jobs:"));
}

TEST_CASE("resolve to internal units") {
  RunConfig cfg;
  cfg.omega_p = 1.37e16;
  cfg.gamma = 1.37e13;
  cfg.distance = 1e-7;
  cfg.temperature = 300;
  const auto in = resolve(cfg);
  CHECK(in.material.gamma == doctest::Approx(1e-3));
  CHECK(in.geometry.distance == doctest::Approx(1e-7 * 1.37e16 / 299792458.0));
  CHECK(in.cutoff.value == doctest::Approx(1e-2));
  REQUIRE(in.temperature.has_value());
  CHECK(in.temperature->t == doctest::Approx(1.380649e-23 * 300 / (1.054571817e-34 * 1.37e16)));
}

TEST_CASE("decomposition rows") {
  RunConfig cfg = basic();
  const auto b = decompose(resolve(cfg));
  const auto rows = decomposition_rows(b);
  CHECK(rows.front().quantity == "ideal mirrors");
  CHECK(rows.back().quantity == "propagating + remainder");
  CHECK(b.remainder == doctest::Approx(b.total - b.plasmon - b.eddy_te - b.eddy_tm));

  RunConfig plasma;
  plasma.model = MaterialModel::Plasma;
  plasma.distance_ratio = 0.1;
  const auto p = decompose(resolve(plasma));
  CHECK(p.no_cut);
  CHECK(p.eddy_te == 0.0);
  CHECK(p.eddy_tm == 0.0);
}

TEST_CASE("sweep grid") {
  SweepSpec s;
  s.from = 1;
  s.to = 100;
  s.points = 3;
  const auto g = sweep_grid(s);
  CHECK(g[1] == doctest::Approx(10.0));
  s.log_spacing = false;
  CHECK(sweep_grid(s)[1] == doctest::Approx(50.5));
  s.points = 1;
  CHECK_THROWS_AS(sweep_grid(s), UsageError);
  s.points = 3;
  s.from = -1;
  CHECK_THROWS_AS(sweep_grid(s), UsageError);
  CHECK_THROWS_AS(parse_sweep_param("omega"), UsageError);
}

TEST_CASE("Lambda sweep: plasmon column constant, eddy varies, threads keep order") {
  RunConfig cfg = basic();
  SweepSpec s{SweepParam::Lambda, 1.0, 100.0, 5, true};
  cfg.jobs = 1;
  const auto serial = run_sweep(cfg, s);
  cfg.jobs = 4;
  const auto parallel = run_sweep(cfg, s);
  REQUIRE(serial.size() == 5);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].result.has_value());
    CHECK(serial[i].param_value == parallel[i].param_value);
    CHECK(serial[i].result->eddy_te == parallel[i].result->eddy_te);
    CHECK(std::abs(serial[i].result->plasmon / serial[0].result->plasmon - 1.0) < 1e-6);
  }
  // E(Lambda) is affine in ln Lambda
  const double d1 = serial[1].result->eddy_te - serial[0].result->eddy_te;
  const double d2 = serial[4].result->eddy_te - serial[3].result->eddy_te;
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-6));

  std::ostringstream os;
  write_csv(os, cfg, serial);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == kCsvHeader);
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(count_fields(line) == 14);
    CHECK(line.ends_with(",ok"));
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("failed sweep points are flagged without aborting") {
  RunConfig cfg = basic();
  cfg.rel_tol = 1e-15;
  SweepSpec s{SweepParam::Distance, 0.1, 0.2, 2, true};
  const auto rows = run_sweep(cfg, s);
  REQUIRE(rows.size() == 2);
  std::ostringstream os;
  write_csv(os, cfg, rows);
  for (const auto& r : rows) {
    if (!r.result) {
      CHECK(r.error_flag == "nonconverged");
      CHECK_FALSE(r.message.empty());
    }
  }
  std::istringstream is(os.str());
  std::string line;
  while (std::getline(is, line)) CHECK(count_fields(line) == 14);
}

TEST_CASE("SI output scaling") {
  RunConfig cfg;
  cfg.omega_p = 1.37e16;
  CHECK(output_energy(cfg, 1.0) == doctest::Approx(1.054571817e-34 * 1.37e16 * std::pow(1.37e16 / 299792458.0, 2)));
  cfg.omega_p.reset();
  CHECK(output_energy(cfg, 1.5) == 1.5);
}

TEST_CASE("check registry") {
  CHECK(checks::registry().size() == 10);
  for (const char* name : {"sum-rule", "lambda-independence", "te-cancellation", "short-distance", "perfect-mirror"}) {
    CHECK(checks::find(name) != nullptr);
  }
  CHECK(checks::find("nope") == nullptr);
  const auto r = checks::mode_term_imaginary();
  CHECK(r.passed);
  CHECK(checks::format_line(r).starts_with("PASS mode-term:"));
}

TEST_CASE("executable exit codes and output") {
  std::string out;
  CHECK(run_cli("decompose --gamma-ratio 1e-3", &out) == kExitUsage);
  CHECK(out.find("distance") != std::string::npos);
  CHECK(run_cli("frobnicate", &out) == kExitUsage);
  CHECK(run_cli("--help", &out) == kExitOk);

  CHECK(run_cli("decompose --model plasma --distance-ratio 0.1", &out) == kExitOk);
  CHECK(out.find("no cut") != std::string::npos);

  // gold-like parameters: plasmons carry the energy at short distance
  CHECK(run_cli("decompose --omega-p 1.37e16 --gamma-ratio 1e-3 --distance-ratio 0.01", &out) == kExitOk);
  CHECK(out.find("J/m^2") != std::string::npos);

  CHECK(run_cli("check sum-rule", &out) == kExitOk);
  CHECK(out.starts_with("PASS sum-rule"));
  CHECK(run_cli("check perfect-mirror", &out) == kExitOk);

  const std::string cfg_path = std::string(CASIMIR_TEST_TMPDIR) + "/run.ini";
  {
    RunConfig cfg = basic();
    cfg.cutoff_lambda = 3.0;
    std::ofstream(cfg_path) << serialize_config(cfg);
  }
  const std::string csv = std::string(CASIMIR_TEST_TMPDIR) + "/sweep.csv";
  CHECK(run_cli("sweep --config " + cfg_path + " --param L --from 0.05 --to 0.2 --points 3 --jobs 2 --out " + csv,
                &out) == kExitOk);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == kCsvHeader);

  CHECK(run_cli("decompose --gamma-ratio 1e-3 --distance-ratio 10 --temperature-ratio 1e-4", &out) == kExitOk);
  CHECK(out.find("warning") != std::string::npos);
}
