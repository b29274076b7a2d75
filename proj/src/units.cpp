#include "casimir/units.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

MaterialParams MaterialParams::drude(double gamma, double omega_p) {
  require(omega_p > 0.0 && std::isfinite(omega_p), "omega_p must be positive");
  require(gamma >= 0.0 && std::isfinite(gamma), "gamma must be non-negative");
  // A lossless Drude metal is the plasma model.
  return {omega_p, gamma, gamma == 0.0 ? MaterialModel::Plasma : MaterialModel::Drude};
}

MaterialParams MaterialParams::plasma(double omega_p) {
  require(omega_p > 0.0 && std::isfinite(omega_p), "omega_p must be positive");
  return {omega_p, 0.0, MaterialModel::Plasma};
}

Geometry::Geometry(double L) : distance(L) {
  require(L > 0.0 && std::isfinite(L), "distance L must be positive");
}

Geometry Geometry::from_wavelength_ratio(double L_over_lambda_p, const MaterialParams& m) {
  return Geometry(L_over_lambda_p * m.plasma_wavelength());
}

CutoffLambda::CutoffLambda(double lambda_cut) : value(lambda_cut) {
  require(lambda_cut > 0.0 && std::isfinite(lambda_cut), "cutoff Lambda must be positive");
}

Temperature::Temperature(double kT) : t(kT) {
  require(kT >= 0.0 && std::isfinite(kT), "temperature must be non-negative");
}

ComplexFrequency::ComplexFrequency(cplx value)
    : value_(value), purely_imaginary_(std::abs(value.real()) <= kImaginaryAxisTol) {
  if (!(value.imag() <= 0.0)) {
    throw DomainError("mode frequency must lie in the lower half plane, got Im = " +
                      std::to_string(value.imag()));
  }
}

double ideal_casimir_energy_per_area(const Geometry& geometry) {
  const double L = geometry.distance;
  return -kPi * kPi / (720.0 * L * L * L);
}

double reduction_factor(double energy_per_area, const Geometry& geometry) {
  return energy_per_area / ideal_casimir_energy_per_area(geometry);
}

UnitSystem::UnitSystem(double omega_p_rad_s) : omega_p_(omega_p_rad_s) {
  require(omega_p_rad_s > 0.0 && std::isfinite(omega_p_rad_s), "omega_p must be positive");
}

// hbar*omega_p * (omega_p/c)^2
double UnitSystem::energy_per_area_to_si(double e) const {
  const double q = omega_p_ / si::kC;
  return e * si::kHbar * omega_p_ * q * q;
}

double UnitSystem::energy_per_area_to_internal(double j_per_m2) const {
  const double q = omega_p_ / si::kC;
  return j_per_m2 / (si::kHbar * omega_p_ * q * q);
}

double ev_to_rad_s(double ev) { return ev / si::kHbarEv; }

}  // namespace casimir
