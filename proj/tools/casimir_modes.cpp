// casimir_modes: mode decomposition tables, parameter sweeps and built-in checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "casimir/checks.hpp"
#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

struct Flags {
  std::string config;
  std::string omega_p;
  std::string gamma;
  double gamma_ratio = 0.0;
  std::string model;
  double distance = 0.0;
  double distance_ratio = 0.0;
  double temperature = 0.0;
  double temperature_ratio = 0.0;
  double cutoff_lambda = 0.0;
  double rel_tol = 0.0;
  int jobs = 0;
  std::string out;
};

RunConfig build_config(const CLI::App& app, const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config_file(f.config);
  auto given = [&app](const char* name) { return app.count(name) > 0; };
  if (given("--omega-p")) cfg.omega_p = parse_frequency(f.omega_p);
  if (given("--gamma")) cfg.gamma = parse_frequency(f.gamma);
  if (given("--gamma-ratio")) cfg.gamma_ratio = f.gamma_ratio;
  if (given("--model")) cfg.model = f.model == "plasma" ? MaterialModel::Plasma : MaterialModel::Drude;
  if (given("--distance")) cfg.distance = f.distance;
  if (given("--distance-ratio")) cfg.distance_ratio = f.distance_ratio;
  if (given("--temperature")) cfg.temperature = f.temperature;
  if (given("--temperature-ratio")) cfg.temperature_ratio = f.temperature_ratio;
  if (given("--cutoff-lambda")) cfg.cutoff_lambda = f.cutoff_lambda;
  if (given("--rel-tol")) cfg.rel_tol = f.rel_tol;
  if (given("--jobs")) cfg.jobs = f.jobs;
  if (given("--out")) cfg.out = f.out;
  return cfg;
}

void warn_regime(const DecompositionInput& in) {
  if (in.temperature && in.material.has_cut() && in.temperature->t < in.material.gamma) {
    std::cerr << "warning: k_B T < hbar gamma; the high-temperature eddy result is outside its regime\n";
  }
}

template <class Body>
int with_output(const RunConfig& cfg, Body&& body) {
  if (cfg.out.empty()) {
    body(std::cout);
    return kExitOk;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("out: cannot write '" + cfg.out + "'");
  body(f);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy between Drude/plasma mirrors, split into mode contributions"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "INI-style config file; flags override it");
  app.add_option("--omega-p", f.omega_p, "plasma frequency in rad/s, or with an eV suffix");
  app.add_option("--gamma", f.gamma, "damping rate in rad/s, or with an eV suffix");
  app.add_option("--gamma-ratio", f.gamma_ratio, "damping rate gamma/omega_p");
  app.add_option("--model", f.model, "material model")->check(CLI::IsMember({"drude", "plasma"}));
  app.add_option("--distance", f.distance, "mirror separation in m (needs --omega-p)");
  app.add_option("--distance-ratio", f.distance_ratio, "mirror separation L/lambda_p");
  app.add_option("--temperature", f.temperature, "temperature in K (needs --omega-p)");
  app.add_option("--temperature-ratio", f.temperature_ratio, "k_B T / (hbar omega_p)");
  app.add_option("--cutoff-lambda", f.cutoff_lambda, "bath cutoff Lambda in units of gamma (default 10)");
  app.add_option("--rel-tol", f.rel_tol, "relative quadrature tolerance (default 1e-9)");
  app.add_option("--jobs", f.jobs, "worker threads for sweeps");
  app.add_option("--out", f.out, "write output to this file instead of stdout");

  auto* decompose_cmd = app.add_subcommand("decompose", "print the mode decomposition at one point");

  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of the decomposition over a parameter grid");
  std::string param;
  SweepSpec spec;
  std::string spacing = "log";
  sweep_cmd->add_option("--param", param, "L (L/lambda_p), T (k_B T/hbar omega_p), gamma (gamma/omega_p), "
                                          "Lambda (Lambda/gamma)")
      ->required();
  sweep_cmd->add_option("--from", spec.from, "first grid value")->required();
  sweep_cmd->add_option("--to", spec.to, "last grid value")->required();
  sweep_cmd->add_option("--points", spec.points, "number of grid points")->required();
  sweep_cmd->add_option("--spacing", spacing, "grid spacing")->check(CLI::IsMember({"log", "linear"}));

  auto* check_cmd = app.add_subcommand("check", "run a built-in verification scenario");
  std::string check_name;
  std::vector<std::string> names;
  for (const auto& c : checks::registry()) names.emplace_back(c.name);
  check_cmd->add_option("name", check_name, "scenario")->required()->check(CLI::IsMember(names));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check_cmd->parsed()) {
      const auto report = checks::find(check_name)->run();
      std::cout << checks::format_line(report) << '\n';
      return report.passed ? kExitOk : kExitCheckFailed;
    }

    const RunConfig cfg = build_config(app, f);
    const DecompositionInput in = resolve(cfg);

    if (decompose_cmd->parsed()) {
      warn_regime(in);
      const EnergyBreakdown b = decompose(in);
      return with_output(cfg, [&](std::ostream& os) { write_table(os, cfg, b); });
    }

    spec.param = parse_sweep_param(param);
    spec.log_spacing = spacing == "log";
    if (spec.param == SweepParam::Temperature) {
      if (in.material.has_cut() && std::min(spec.from, spec.to) < in.material.gamma) {
        std::cerr << "warning: part of the grid has k_B T < hbar gamma; high-T eddy columns are outside "
                     "their regime there\n";
      }
    } else {
      warn_regime(in);
    }
    const auto rows = run_sweep(cfg, spec);
    int failed = 0;
    for (const auto& r : rows) {
      if (r.error_flag == "nonconverged" || r.error_flag == "error") {
        ++failed;
        std::cerr << "point " << r.param_value << ": " << r.message << '\n';
      }
    }
    with_output(cfg, [&](std::ostream& os) { write_csv(os, cfg, rows); });
    return failed == static_cast<int>(rows.size()) ? kExitNumerical : kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (best estimate " << e.best_estimate()
              << ", achieved tol " << e.achieved_tol() << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
