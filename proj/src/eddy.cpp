#include "casimir/eddy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir {

namespace {

// Below this ln(gamma/xi_low) the cut is narrow and a linear map is used.
constexpr double kLogMapThreshold = 1.0;

// Inner integral over xi at fixed k. Substitutions with (1 - cos theta)/2
// remove the square-root behaviour at both ends of the cut:
//   wide cut:   xi = xi_low * exp(l (1 - cos theta)/2), l = ln(gamma/xi_low)
//   narrow cut: xi = xi_low + width (1 - cos theta)/2
IntegrationResult inner_cut_integral(Polarization pol, double k, const Geometry& geometry,
                                     const MaterialParams& m,
                                     const std::function<double(double)>& weight,
                                     const QuadratureConfig& inner_cfg) {
  const CutInterval cut = cut_endpoints(k, m);
  if (!(cut.width > 0.0)) return {};
  const double log_span = cut.xi_low > 0.0 ? std::log(cut.xi_high / cut.xi_low)
                                           : std::numeric_limits<double>::infinity();
  const bool log_map = log_span > kLogMapThreshold;

  auto integrand = [&](double theta) {
    const double u = 0.5 * (1.0 - std::cos(theta));
    double xi;
    double jac;
    if (log_map) {
      xi = cut.xi_low * std::exp(log_span * u);
      jac = xi * log_span * 0.5 * std::sin(theta);
    } else {
      xi = cut.xi_low + cut.width * u;
      jac = cut.width * 0.5 * std::sin(theta);
    }
    if (!(xi > cut.xi_low && xi < cut.xi_high)) return 0.0;
    return weight(xi) * cut_mode_count(pol, xi, k, geometry, m) * jac;
  };
  return integrate(integrand, {0.0, kPi}, inner_cfg);
}

}  // namespace

double cut_mode_count(Polarization pol, double xi, double k, const Geometry& geometry,
                      const MaterialParams& m) {
  return -cut_phase(pol, xi, k, geometry, m) / kPi;
}

Estimate integrate_over_cut(Polarization pol, const Geometry& geometry, const MaterialParams& m,
                            const std::function<double(double)>& weight, double abs_scale,
                            const QuadratureConfig& quad) {
  if (!m.has_cut()) throw NoCutError("the plasma model (gamma = 0) has no eddy-current cut");
  const double L = geometry.distance;

  QuadratureConfig inner_cfg;
  inner_cfg.rel_tol = 0.1 * quad.rel_tol;
  inner_cfg.abs_tol = 0.0;
  inner_cfg.max_subdivisions = quad.max_subdivisions;

  QuadratureConfig outer_cfg = quad;
  outer_cfg.tail_transform = TailTransform::ExpDecay;
  outer_cfg.tail_scale = 1.0 / (2.0 * L);
  outer_cfg.abs_tol = quad.abs_tol * abs_scale;
  // k at which the inner map switches: xi_low = gamma / e.
  const double xi_switch = m.gamma / std::exp(kLogMapThreshold);
  const double k_switch_sq = m.omega_p * m.omega_p * xi_switch / (m.gamma - xi_switch) -
                             xi_switch * xi_switch;
  if (k_switch_sq > 0.0) outer_cfg.breakpoints.push_back(std::sqrt(k_switch_sq));
  std::sort(outer_cfg.breakpoints.begin(), outer_cfg.breakpoints.end());

  double worst_inner = 0.0;
  const auto outer = integrate(
      [&](double k) {
        const IntegrationResult in = inner_cut_integral(pol, k, geometry, m, weight, inner_cfg);
        worst_inner = std::max(worst_inner, in.achieved_tol());
        return k / (2.0 * kPi) * in.value;
      },
      Interval::semi_infinite(0.0), outer_cfg);
  return {outer.value, outer.achieved_tol() + worst_inner};
}

EddyResult eddy_energy_T0(Polarization pol, const Geometry& geometry, const MaterialParams& m,
                          const CutoffLambda& cutoff, const QuadratureConfig& quad) {
  EddyResult res;
  res.polarization = pol;
  res.regime = EddyRegime::ZeroT;
  res.cutoff_used = cutoff;
  if (!m.has_cut()) {
    res.no_cut = true;
    return res;
  }
  const double log_cutoff = std::log(cutoff.value);
  // d/dxi [xi ln(xi/Lambda) / 2pi]
  auto weight = [log_cutoff](double xi) { return (std::log(xi) - log_cutoff + 1.0) / (2.0 * kPi); };
  const Estimate e = integrate_over_cut(pol, geometry, m, weight,
                                        std::abs(ideal_casimir_energy_per_area(geometry)), quad);
  res.value = e.value;
  res.achieved_tol = e.achieved_tol;
  return res;
}

EddyResult eddy_free_energy_highT(Polarization pol, const Geometry& geometry,
                                  const MaterialParams& m, const Temperature& temp,
                                  const QuadratureConfig& quad) {
  if (!(temp.t > 0.0)) throw DomainError("high-temperature eddy free energy requires T > 0");
  EddyResult res;
  res.polarization = pol;
  res.regime = EddyRegime::HighT;
  if (!m.has_cut()) {
    res.no_cut = true;
    return res;
  }
  const double L = geometry.distance;
  // Computed per unit k_B T and scaled afterwards, so the result is exactly linear in T.
  auto weight = [](double xi) { return -0.5 / xi; };
  const Estimate e = integrate_over_cut(pol, geometry, m, weight, 1.0 / (L * L), quad);
  res.value = temp.t * e.value;
  res.achieved_tol = e.achieved_tol;
  return res;
}

Estimate eddy_cut_mode_integral(Polarization pol, const Geometry& geometry,
                                const MaterialParams& m, const QuadratureConfig& quad) {
  if (!m.has_cut()) return {};
  const double L = geometry.distance;
  return integrate_over_cut(pol, geometry, m, [](double) { return 1.0; }, 1.0 / (L * L * L), quad);
}

Estimate plasma_highT_TE_reference(const Geometry& geometry, const MaterialParams& m,
                                   const Temperature& temp, const QuadratureConfig& quad) {
  if (!(temp.t > 0.0)) throw DomainError("high-temperature reference requires T > 0");
  const double L = geometry.distance;
  const kernels::RoundTripParams params{L, 0.0, m.omega_p * m.omega_p};

  QuadratureConfig cfg = quad;
  cfg.tail_transform = TailTransform::ExpDecay;
  cfg.tail_scale = 1.0 / (2.0 * L);
  cfg.abs_tol = quad.abs_tol / (L * L);

  std::vector<double> te;
  std::vector<double> tm;
  const auto r = integrate_batch(
      [&](std::span<const double> k, std::span<double> fk) {
        te.resize(k.size());
        tm.resize(k.size());
        kernels::round_trip_log(params, k, te, tm);
        for (std::size_t i = 0; i < k.size(); ++i) fk[i] = k[i] / (2.0 * kPi) * te[i];
      },
      Interval::semi_infinite(0.0), cfg);
  return {0.5 * temp.t * r.value, r.achieved_tol()};
}

double te_cancellation_ratio(const Geometry& geometry, const MaterialParams& m,
                             const Temperature& temp, const QuadratureConfig& quad) {
  const EddyResult eddy = eddy_free_energy_highT(Polarization::TE, geometry, m, temp, quad);
  if (eddy.no_cut) throw NoCutError("TE cancellation needs a Drude metal with gamma > 0");
  const Estimate ref = plasma_highT_TE_reference(geometry, m, temp, quad);
  if (std::abs(ref.value) < std::numeric_limits<double>::min() * 1e4) {
    throw NumericalError("plasma TE reference underflows; ratio undefined", ref.value, ref.achieved_tol);
  }
  return eddy.value / -ref.value;
}

}  // namespace casimir
