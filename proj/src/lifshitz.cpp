#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "casimir/eddy.hpp"
#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir {

namespace {

constexpr double kMatsubaraTailThreshold = 1e-4;
constexpr long kMatsubaraCap = 1'000'000;

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

QuadratureConfig inner_config(const Geometry& geometry, const QuadratureConfig& quad) {
  QuadratureConfig cfg;
  cfg.rel_tol = 0.1 * quad.rel_tol;
  cfg.abs_tol = 0.0;
  cfg.max_subdivisions = quad.max_subdivisions;
  cfg.tail_transform = TailTransform::ExpDecay;
  cfg.tail_scale = 1.0 / (2.0 * geometry.distance);
  return cfg;
}

// Geometric extrapolation of the remaining Matsubara tail from the last two terms.
double geometric_tail(double last, double previous) {
  if (previous == 0.0) return 0.0;
  const double ratio = last / previous;
  if (!(ratio > 0.0 && ratio < 1.0)) return 0.0;
  return last * ratio / (1.0 - ratio);
}

}  // namespace

double imaginary_axis_susceptibility(double xi, const MaterialParams& m) {
  const double wp2 = m.omega_p * m.omega_p;
  if (xi == 0.0) return m.gamma == 0.0 ? wp2 : 0.0;
  return wp2 * xi / (xi + m.gamma);
}

RoundTripIntegral round_trip_integral(double xi, const Geometry& geometry, const MaterialParams& m,
                                      const QuadratureConfig& quad) {
  const kernels::RoundTripParams params{geometry.distance, xi * xi,
                                        imaginary_axis_susceptibility(xi, m)};
  const QuadratureConfig cfg = inner_config(geometry, quad);

  std::vector<double> te(32);
  std::vector<double> tm(32);
  auto pol_integrand = [&](bool want_te) {
    return [&, want_te](std::span<const double> kappa, std::span<double> f) {
      te.resize(kappa.size());
      tm.resize(kappa.size());
      kernels::round_trip_log(params, kappa, te, tm);
      const std::vector<double>& src = want_te ? te : tm;
      for (std::size_t i = 0; i < kappa.size(); ++i) f[i] = kappa[i] * src[i];
    };
  };

  RoundTripIntegral out;
  // Drude TE vanishes identically in the static limit.
  if (params.susceptibility != 0.0) {
    const auto r = integrate_batch(pol_integrand(true), Interval::semi_infinite(xi), cfg);
    out.te = r.value;
    out.achieved_tol = r.achieved_tol();
  }
  const auto r = integrate_batch(pol_integrand(false), Interval::semi_infinite(xi), cfg);
  out.tm = r.value;
  out.achieved_tol = std::max(out.achieved_tol, r.achieved_tol());
  return out;
}

LifshitzBreakdown casimir_energy_T0(const Geometry& geometry, const MaterialParams& m,
                                    const QuadratureConfig& quad) {
  const double ideal = ideal_casimir_energy_per_area(geometry);
  QuadratureConfig cfg = quad;
  cfg.tail_transform = TailTransform::ExpDecay;
  cfg.tail_scale = 1.0 / (2.0 * geometry.distance);
  cfg.abs_tol = quad.abs_tol * std::abs(ideal) * 4.0 * kPi * kPi;
  if (m.gamma > 0.0) cfg.breakpoints.push_back(m.gamma);
  std::sort(cfg.breakpoints.begin(), cfg.breakpoints.end());

  double worst_inner = 0.0;
  auto outer = [&](bool want_te) {
    return integrate(
        [&, want_te](double xi) {
          const RoundTripIntegral in = round_trip_integral(xi, geometry, m, quad);
          worst_inner = std::max(worst_inner, in.achieved_tol);
          return want_te ? in.te : in.tm;
        },
        Interval::semi_infinite(0.0), cfg);
  };
  const auto te = outer(true);
  const auto tm = outer(false);

  const double norm = 1.0 / (4.0 * kPi * kPi);
  LifshitzBreakdown out;
  out.te = norm * te.value;
  out.tm = norm * tm.value;
  out.total = out.te + out.tm;
  out.eta = out.total / ideal;
  out.achieved_tol = std::max(te.achieved_tol(), tm.achieved_tol()) + worst_inner;
  return out;
}

LifshitzBreakdown free_energy_T(const Geometry& geometry, const MaterialParams& m,
                                const Temperature& temp, const QuadratureConfig& quad) {
  if (!(temp.t > 0.0)) throw DomainError("Matsubara free energy requires T > 0");
  const double spacing = 2.0 * kPi * temp.t;
  const double norm = temp.t / (2.0 * kPi);

  std::vector<double> te_terms;
  std::vector<double> tm_terms;
  double running = 0.0;
  double worst = 0.0;
  for (long n = 0;; ++n) {
    if (n >= kMatsubaraCap) {
      throw NumericalError("Matsubara sum did not converge within the term cap",
                           norm * (pairwise_sum(te_terms) + pairwise_sum(tm_terms)), 1.0);
    }
    const RoundTripIntegral in = round_trip_integral(spacing * static_cast<double>(n), geometry, m, quad);
    const double weight = n == 0 ? 0.5 : 1.0;
    te_terms.push_back(weight * in.te);
    tm_terms.push_back(weight * in.tm);
    worst = std::max(worst, in.achieved_tol);

    const double term = te_terms.back() + tm_terms.back();
    running += term;
    if (n >= 2 && std::abs(term) <= kMatsubaraTailThreshold * std::abs(running)) break;
    if (n >= 1 && term == 0.0) break;
  }

  const std::size_t last = te_terms.size() - 1;
  const double te_tail = geometric_tail(te_terms[last], te_terms[last - 1]);
  const double tm_tail = geometric_tail(tm_terms[last], tm_terms[last - 1]);

  LifshitzBreakdown out;
  out.te = norm * (pairwise_sum(te_terms) + te_tail);
  out.tm = norm * (pairwise_sum(tm_terms) + tm_tail);
  out.total = out.te + out.tm;
  out.eta = out.total / ideal_casimir_energy_per_area(geometry);
  const double tail = std::abs(te_tail) + std::abs(tm_tail);
  const double sum = std::abs(out.total) / norm;
  out.achieved_tol = worst + (sum > 0.0 ? tail / sum : 0.0) * 0.1;
  out.matsubara_terms = static_cast<long>(te_terms.size());
  return out;
}

double propagating_minus_eddy_check_TE(const Geometry& geometry, const MaterialParams& m,
                                       const Temperature& temp, const QuadratureConfig& quad) {
  if (!m.has_cut()) throw NoCutError("no eddy-current contribution for the plasma model");
  const EddyResult eddy = eddy_free_energy_highT(Polarization::TE, geometry, m, temp, quad);
  if (eddy.value == 0.0) throw NumericalError("eddy free energy vanished; ratio undefined", 0.0, 1.0);
  const LifshitzBreakdown drude = free_energy_T(geometry, m, temp, quad);
  return drude.te / std::abs(eddy.value);
}

}  // namespace casimir
