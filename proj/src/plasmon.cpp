#include "casimir/plasmon.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

PlasmonBranch make_branch(double undamped_sq, double gamma) {
  PlasmonBranch b{undamped_sq, false, {}};
  const double half_gamma = 0.5 * gamma;
  const double d = undamped_sq - half_gamma * half_gamma;
  const double re = d > 0.0 ? std::sqrt(d) : 0.0;
  if (re > ComplexFrequency::kImaginaryAxisTol) {
    b.roots.emplace_back(cplx(re, -half_gamma));
    return b;
  }
  // Overdamped (or critically damped): two imaginary roots with
  // xi_1 + xi_2 = gamma and xi_1 xi_2 = w^2. The smaller one comes from the
  // product so it keeps full precision.
  b.overdamped = true;
  const double spread = std::sqrt(std::max(-d, 0.0));
  const double large = half_gamma + spread;
  const double small = large > 0.0 ? undamped_sq / large : 0.0;
  b.roots.push_back(ComplexFrequency::imaginary(large));
  b.roots.push_back(ComplexFrequency::imaginary(small));
  return b;
}

double branch_energy(const PlasmonBranch& b, const CutoffLambda& cutoff) {
  double sum = 0.0;
  for (const auto& w : b.roots) sum += mode_term(w, cutoff);
  return sum;
}

}  // namespace

cplx PlasmonBranch::weighted_sum() const {
  cplx s(0.0);
  for (const auto& w : roots) s += prime_weight(w) * w.value();
  return s;
}

double prime_weight(const ComplexFrequency& w) { return w.purely_imaginary() ? 0.5 : 1.0; }

PlasmonPair quasistatic_frequencies(double k, std::optional<double> distance,
                                    const MaterialParams& m) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("plasmon dispersion requires k > 0");
  if (distance && !(*distance > 0.0)) throw DomainError("distance L must be positive");
  const double half_wp2 = 0.5 * m.omega_p * m.omega_p;
  double plus_sq = half_wp2;
  double minus_sq = half_wp2;
  if (distance) {
    const double e = std::exp(-k * *distance);
    plus_sq = half_wp2 * (1.0 + e);
    minus_sq = -half_wp2 * std::expm1(-k * *distance);
  }
  return {make_branch(plus_sq, m.gamma), make_branch(minus_sq, m.gamma), k, distance};
}

double mode_term(const ComplexFrequency& w, const CutoffLambda& cutoff) {
  const cplx z = w.value();
  if (z == cplx(0.0)) throw DomainError("mode_term is undefined at zero frequency");
  // Re[z - (2i z/pi) ln(z/Lambda)] = Re z + (2/pi) Im(z ln(z/Lambda)), with the principal log.
  const double log_mod = std::log(std::abs(z) / cutoff.value);
  const double log_arg = std::arg(z);
  const double im_z_log = z.real() * log_arg + z.imag() * log_mod;
  return prime_weight(w) * 0.5 * (z.real() + (2.0 / kPi) * im_z_log);
}

double sum_rule_residual(double k, const Geometry& geometry, const MaterialParams& m) {
  const PlasmonPair at_L = quasistatic_frequencies(k, geometry.distance, m);
  const PlasmonPair at_inf = quasistatic_frequencies(k, std::nullopt, m);
  const double im_L = at_L.plus.weighted_sum().imag() + at_L.minus.weighted_sum().imag();
  const double im_inf = at_inf.plus.weighted_sum().imag() + at_inf.minus.weighted_sum().imag();
  return im_L - im_inf;
}

std::vector<double> overdamping_thresholds(const Geometry& geometry, const MaterialParams& m) {
  std::vector<double> out;
  if (!m.has_cut()) return out;
  const double ratio = m.gamma * m.gamma / (2.0 * m.omega_p * m.omega_p);
  const double L = geometry.distance;
  // minus branch: exp(-kL) = 1 - ratio
  if (ratio > 0.0 && ratio < 1.0) out.push_back(-std::log1p(-ratio) / L);
  // plus branch: exp(-kL) = ratio - 1
  if (ratio > 1.0 && ratio < 2.0) out.push_back(-std::log(ratio - 1.0) / L);
  std::sort(out.begin(), out.end());
  return out;
}

double plasmon_energy_integrand(double k, const Geometry& geometry, const MaterialParams& m,
                                const CutoffLambda& cutoff) {
  if (k == 0.0) return 0.0;  // limit of the k/2pi weight
  const PlasmonPair at_L = quasistatic_frequencies(k, geometry.distance, m);
  const PlasmonPair at_inf = quasistatic_frequencies(k, std::nullopt, m);
  const double bracket = (branch_energy(at_L.plus, cutoff) - branch_energy(at_inf.plus, cutoff)) +
                         (branch_energy(at_L.minus, cutoff) - branch_energy(at_inf.minus, cutoff));
  return k / (2.0 * kPi) * bracket;
}

Estimate plasmon_energy(const Geometry& geometry, const MaterialParams& m,
                        const CutoffLambda& cutoff, const QuadratureConfig& quad) {
  QuadratureConfig cfg = quad;
  cfg.tail_transform = TailTransform::ExpDecay;
  cfg.tail_scale = 1.0 / geometry.distance;
  cfg.abs_tol = quad.abs_tol * std::abs(ideal_casimir_energy_per_area(geometry));
  for (double k : overdamping_thresholds(geometry, m)) cfg.breakpoints.push_back(k);
  std::sort(cfg.breakpoints.begin(), cfg.breakpoints.end());
  cfg.breakpoints.erase(std::unique(cfg.breakpoints.begin(), cfg.breakpoints.end()),
                        cfg.breakpoints.end());

  const auto r = integrate(
      [&](double k) { return plasmon_energy_integrand(k, geometry, m, cutoff); },
      Interval::semi_infinite(0.0), cfg);
  return {r.value, r.achieved_tol()};
}

double plasmon_energy_asymptotic(const Geometry& geometry, const MaterialParams& m) {
  const double L = geometry.distance;
  const double bracket =
      kShortDistanceAlpha * L / m.plasma_wavelength() - kDissipativeCoefficient * m.gamma * L;
  return ideal_casimir_energy_per_area(geometry) * 1.5 * bracket;
}

}  // namespace casimir
