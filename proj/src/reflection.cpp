#include "casimir/reflection.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

constexpr cplx kI(0.0, 1.0);

// Square root on the branch Im >= 0.
cplx sqrt_upper(cplx z) {
  const cplx w = std::sqrt(z);
  return w.imag() < 0.0 ? -w : w;
}

// omega_p^2 omega / (omega + i gamma) = omega^2 (1 - eps).
cplx drude_polarization(cplx omega, const MaterialParams& m) {
  const cplx den = omega + kI * m.gamma;
  if (den == cplx(0.0)) throw SingularityError("Drude response evaluated at its pole omega = -i gamma");
  return m.omega_p * m.omega_p * omega / den;
}

// -xi^2 + omega_p^2 xi / (gamma - xi) - k^2: k_m^2 at omega = -i xi, real.
double cut_km_squared(double xi, double k, const MaterialParams& m) {
  const double gap = m.gamma - xi;
  if (gap == 0.0) throw SingularityError("cut evaluated at xi = gamma");
  return -xi * xi + m.omega_p * m.omega_p * xi / gap - k * k;
}

cplx reflection_from(Polarization pol, cplx kz, cplx km, cplx eps) {
  cplx num;
  cplx den;
  if (pol == Polarization::TE) {
    num = kz - km;
    den = kz + km;
  } else {
    num = eps * kz - km;
    den = eps * kz + km;
  }
  if (den == cplx(0.0)) throw SingularityError("Fresnel denominator vanishes");
  return num / den;
}

}  // namespace

EvaluationPoint::EvaluationPoint(cplx omega_, double k_, BranchSide side_)
    : omega(omega_), k(k_), side(side_) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("lateral wavevector k must be >= 0");
  if (side == BranchSide::CutLeft && !(omega.real() == 0.0 && omega.imag() < 0.0)) {
    throw DomainError("cut-side evaluation requires omega = -i xi with xi > 0");
  }
}

cplx epsilon(cplx omega, const MaterialParams& m) {
  if (omega == cplx(0.0)) throw SingularityError("permittivity evaluated at omega = 0");
  const cplx den = omega * (omega + kI * m.gamma);
  if (den == cplx(0.0)) throw SingularityError("permittivity evaluated at omega = -i gamma");
  return 1.0 - m.omega_p * m.omega_p / den;
}

cplx medium_wavenumber(const EvaluationPoint& pt, const MaterialParams& m) {
  if (pt.side == BranchSide::CutLeft) {
    const double km2 = cut_km_squared(-pt.omega.imag(), pt.k, m);
    // On the cut the left rim carries the positive real root.
    return km2 > 0.0 ? cplx(std::sqrt(km2), 0.0) : cplx(0.0, std::sqrt(-km2));
  }
  const cplx w = pt.omega;
  return sqrt_upper(w * w - drude_polarization(w, m) - pt.k * pt.k);
}

cplx vacuum_wavenumber(const EvaluationPoint& pt) {
  if (pt.side == BranchSide::CutLeft) {
    const double xi = -pt.omega.imag();
    return cplx(0.0, std::hypot(xi, pt.k));
  }
  return sqrt_upper(pt.omega * pt.omega - pt.k * pt.k);
}

cplx fresnel_r(Polarization pol, const EvaluationPoint& pt, const MaterialParams& m) {
  const cplx kz = vacuum_wavenumber(pt);
  const cplx km = medium_wavenumber(pt, m);
  if (pol == Polarization::TE) {
    // k_z - k_m = omega^2 (1 - eps) / (k_z + k_m)
    const cplx den = kz + km;
    if (den == cplx(0.0)) throw SingularityError("Fresnel denominator vanishes");
    return drude_polarization(pt.omega, m) / (den * den);
  }
  return reflection_from(pol, kz, km, epsilon(pt.omega, m));
}

CutInterval cut_endpoints(double k, const MaterialParams& m) {
  if (!m.has_cut()) throw NoCutError("the plasma model (gamma = 0) has no eddy-current cut");
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("lateral wavevector k must be >= 0");
  const double g = m.gamma;
  if (k == 0.0) return {0.0, g, g};

  // Solve in x = ln(xi / (gamma - xi)) so both xi and gamma - xi keep full
  // relative precision: omega_p^2 e^x - xi^2 = k^2. Shifting x by
  // x0 = ln(k^2/omega_p^2) and dividing by k^2 gives expm1(y) = xi^2/k^2,
  // which keeps the sign at y = 0 exact.
  const double wp2 = m.omega_p * m.omega_p;
  const double k2 = k * k;
  const double x0 = std::log(k2 / wp2);
  auto xi_of = [g](double x) { return g / (1.0 + std::exp(-x)); };
  auto h = [&](double y) {
    const double xi = xi_of(x0 + y);
    return std::expm1(y) - xi * xi / k2;
  };
  const double hi = std::log1p(g * g / k2);
  double x;
  try {
    x = x0 + find_root_bracketed(h, 0.0, hi, 1e-15 * std::max(1.0, std::abs(x0)));
  } catch (const NumericalError& e) {
    std::ostringstream os;
    os << "cut endpoint search failed at k = " << k << ": " << e.what();
    throw NumericalError(os.str(), e.best_estimate(), e.achieved_tol());
  }
  return {xi_of(x), g, g / (1.0 + std::exp(x))};
}

double cut_phase(Polarization pol, double xi, double k, const Geometry& geometry,
                 const MaterialParams& m) {
  if (!m.has_cut()) return 0.0;
  const EvaluationPoint pt = EvaluationPoint::cut_left(xi, k);
  const double kappa = std::hypot(xi, k);
  const cplx r = fresnel_r(pol, pt, m);
  const cplx d = 1.0 - r * r * std::exp(-2.0 * kappa * geometry.distance);
  return std::arg(d);
}

double cut_phase_offset(Polarization pol, double xi, double k, const Geometry& geometry,
                        const MaterialParams& m, double offset) {
  if (!(offset > 0.0)) throw DomainError("offset must be positive");
  if (m.gamma > 0.0 && xi == m.gamma) throw SingularityError("cut evaluated at xi = gamma");
  // Literal Fresnel formulas with principal square roots. Extended precision
  // because (k_z - k_m) cancels badly once k dominates.
  using lcplx = std::complex<long double>;
  const lcplx i1(0.0L, 1.0L);
  const long double wp2 = static_cast<long double>(m.omega_p) * m.omega_p;
  const long double kk = static_cast<long double>(k) * k;
  auto phase_at = [&](long double delta) {
    const lcplx w(-delta, -static_cast<long double>(xi));
    const lcplx chi = wp2 * w / (w + i1 * static_cast<long double>(m.gamma));
    const lcplx eps = 1.0L - chi / (w * w);
    const lcplx km = std::sqrt(w * w - chi - kk);
    const lcplx kappa = std::sqrt(kk - w * w);
    const lcplx kz = i1 * kappa;
    const lcplx r = pol == Polarization::TE ? (kz - km) / (kz + km)
                                            : (eps * kz - km) / (eps * kz + km);
    const lcplx d = 1.0L - r * r * std::exp(-2.0L * kappa * static_cast<long double>(geometry.distance));
    return std::arg(d);
  };
  // Richardson table over offsets h, h/2, h/4, h/8; the error is a power
  // series in the offset, so each column removes one more order.
  constexpr int kLevels = 4;
  long double t[kLevels];
  long double h = offset;
  for (int i = 0; i < kLevels; ++i, h *= 0.5L) t[i] = phase_at(h);
  long double scale = 2.0L;
  for (int col = 1; col < kLevels; ++col, scale *= 2.0L) {
    for (int i = kLevels - 1; i >= col; --i) t[i] = (scale * t[i] - t[i - 1]) / (scale - 1.0L);
  }
  return static_cast<double>(t[kLevels - 1]);
}

}  // namespace casimir
