#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  return buf;
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const char* energy_unit(const RunConfig& cfg) {
  return cfg.omega_p ? "J/m^2" : "hbar*omega_p^3/c^2";
}

}  // namespace

const char* const kCsvHeader =
    "param_value,E_ideal,E_total,E_total_TE,E_total_TM,E_plasmon,E_plasmon_asym,E_eddy_TE,"
    "E_eddy_TM,F_eddy_TE_highT,F_plasma_TE_highT,eta_total,tol_achieved,error_flag";

double output_energy(const RunConfig& cfg, double internal) {
  return cfg.omega_p ? UnitSystem(*cfg.omega_p).energy_per_area_to_si(internal) : internal;
}

std::vector<TableRow> decomposition_rows(const EnergyBreakdown& b) {
  const char* kind = b.finite_temperature ? "Lifshitz free energy" : "Lifshitz energy";
  auto row = [&b](std::string q, double v, std::string note = {}) {
    return TableRow{std::move(q), v, v == 0.0 ? 0.0 : v / b.ideal, std::move(note)};
  };
  const char* no_cut = b.no_cut ? "no cut" : "";
  std::vector<TableRow> rows = {
      row("ideal mirrors", b.ideal),
      row(std::string(kind) + " total", b.total),
      row(std::string(kind) + " TE", b.total_te),
      row(std::string(kind) + " TM", b.total_tm),
      row("plasmons", b.plasmon),
      row("plasmons, short-distance expansion", b.plasmon_asymptotic),
      row("eddy currents TE (T=0)", b.eddy_te, no_cut),
      row("eddy currents TM (T=0)", b.eddy_tm, no_cut),
  };
  if (b.eddy_te_highT) {
    std::string note = b.no_cut ? "no cut" : b.below_eddy_regime ? "k_B T < hbar gamma" : "";
    rows.push_back(row("eddy currents TE (high T)", *b.eddy_te_highT, note));
  }
  if (b.plasma_te_highT) rows.push_back(row("plasma TE zero-frequency term", *b.plasma_te_highT));
  rows.push_back(row("propagating + remainder", b.remainder, "total - plasmons - eddy (T=0)"));
  return rows;
}

void write_table(std::ostream& os, const RunConfig& cfg, const EnergyBreakdown& b) {
  const DecompositionInput in = resolve(cfg);
  os << "# model " << (in.material.has_cut() ? "drude" : "plasma") << ", gamma/omega_p "
     << short_num(in.material.gamma) << ", L/lambda_p "
     << short_num(in.geometry.distance / in.material.plasma_wavelength()) << ", Lambda/omega_p "
     << short_num(in.cutoff.value);
  if (in.temperature) os << ", k_B T/hbar omega_p " << short_num(in.temperature->t);
  os << "\n# energies per area in " << energy_unit(cfg) << "; eta = value / ideal\n";
  os << "# propagating + remainder is the Lifshitz total minus the plasmon and T=0 eddy rows\n";

  char line[160];
  std::snprintf(line, sizeof line, "%-40s %18s %14s  %s\n", "quantity", "value", "eta", "note");
  os << line;
  for (const auto& r : decomposition_rows(b)) {
    std::snprintf(line, sizeof line, "%-40s %18.9e %14.7e  %s\n", r.quantity.c_str(),
                  output_energy(cfg, r.value), r.eta, r.note.c_str());
    os << line;
  }
  std::snprintf(line, sizeof line, "%-40s %18.3e\n", "estimated error / |ideal|", b.achieved_tol);
  os << line;
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "L") return SweepParam::Distance;
  if (name == "T") return SweepParam::Temperature;
  if (name == "gamma") return SweepParam::Gamma;
  if (name == "Lambda") return SweepParam::Lambda;
  throw UsageError("param: expected one of L, T, gamma, Lambda; got '" + name + "'");
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (spec.points < 2) throw UsageError("points: a sweep needs at least 2 grid points");
  if (!(spec.from > 0.0) || !(spec.to > 0.0) || !std::isfinite(spec.from) || !std::isfinite(spec.to)) {
    throw UsageError("grid: bounds must be positive and finite");
  }
  std::vector<double> grid(spec.points);
  for (int i = 0; i < spec.points; ++i) {
    const double f = static_cast<double>(i) / (spec.points - 1);
    grid[i] = spec.log_spacing ? spec.from * std::pow(spec.to / spec.from, f)
                               : spec.from + (spec.to - spec.from) * f;
  }
  grid.front() = spec.from;
  grid.back() = spec.to;
  return grid;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& spec) {
  const DecompositionInput base = resolve(cfg);
  if (spec.param == SweepParam::Gamma && cfg.model == MaterialModel::Plasma) {
    throw UsageError("param: a gamma sweep needs the drude model");
  }
  const std::vector<double> grid = sweep_grid(spec);
  const double distance_ratio = base.geometry.distance / base.material.plasma_wavelength();

  auto point_input = [&](double v) {
    DecompositionInput in = base;
    switch (spec.param) {
      case SweepParam::Distance:
        in.geometry = Geometry::from_wavelength_ratio(v, in.material);
        break;
      case SweepParam::Temperature:
        in.temperature = Temperature(v);
        break;
      case SweepParam::Gamma:
        in.material = MaterialParams::drude(v);
        in.geometry = Geometry::from_wavelength_ratio(distance_ratio, in.material);
        in.cutoff = CutoffLambda(cfg.cutoff_lambda * v);
        break;
      case SweepParam::Lambda:
        in.cutoff = CutoffLambda(v * (in.material.has_cut() ? in.material.gamma : in.material.omega_p));
        break;
    }
    return in;
  };

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      SweepRow& row = rows[i];
      row.param_value = grid[i];
      try {
        row.result = decompose(point_input(grid[i]));
        row.error_flag = row.result->no_cut ? "no_cut" : "ok";
      } catch (const NumericalError& e) {
        row.error_flag = "nonconverged";
        row.message = e.what();
      } catch (const std::exception& e) {
        row.error_flag = "error";
        row.message = e.what();
      }
    }
  };
  const int n = std::min<int>(cfg.jobs, static_cast<int>(grid.size()));
  std::vector<std::jthread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<SweepRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& row : rows) {
    os << sci(row.param_value);
    if (row.result) {
      const EnergyBreakdown& b = *row.result;
      for (double e : {b.ideal, b.total, b.total_te, b.total_tm, b.plasmon, b.plasmon_asymptotic,
                       b.eddy_te, b.eddy_tm}) {
        os << ',' << sci(output_energy(cfg, e));
      }
      for (const auto& opt : {b.eddy_te_highT, b.plasma_te_highT}) {
        os << ',';
        if (opt) os << sci(output_energy(cfg, *opt));
      }
      os << ',' << sci(b.eta_total) << ',' << sci(b.achieved_tol);
    } else {
      os << ",,,,,,,,,,,,";
    }
    os << ',' << row.error_flag << '\n';
  }
}

}  // namespace casimir::cli
