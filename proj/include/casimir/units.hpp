#pragma once

// Shared domain types. Internally hbar = c = 1 and every frequency is a
// multiple of the plasma frequency scale, so distances are in c/omega_p and
// energies per area in hbar*omega_p^3/c^2.

#include <complex>
#include <numbers>

namespace casimir {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kZeta3 = 1.2020569031595942853997;

enum class MaterialModel { Drude, Plasma };

struct MaterialParams {
  double omega_p = 1.0;
  double gamma = 0.0;
  MaterialModel model = MaterialModel::Plasma;

  static MaterialParams drude(double gamma, double omega_p = 1.0);
  static MaterialParams plasma(double omega_p = 1.0);

  /// 2*pi*c/omega_p.
  double plasma_wavelength() const { return 2.0 * kPi / omega_p; }
  bool has_cut() const { return gamma > 0.0; }
};

struct Geometry {
  double distance;

  explicit Geometry(double L);
  /// Separation given as a fraction of the plasma wavelength.
  static Geometry from_wavelength_ratio(double L_over_lambda_p, const MaterialParams& m);
};

/// Bath cutoff frequency of the logarithmic mode-energy correction.
struct CutoffLambda {
  double value;
  explicit CutoffLambda(double lambda_cut);
};

/// k_B*T in units of hbar*omega_p.
struct Temperature {
  double t;
  explicit Temperature(double kT);
};

/// A mode eigenfrequency in the closed lower half plane.
class ComplexFrequency {
 public:
  static constexpr double kImaginaryAxisTol = 1e-14;

  explicit ComplexFrequency(cplx value);
  static ComplexFrequency imaginary(double xi) { return ComplexFrequency(cplx(0.0, -xi)); }

  cplx value() const { return value_; }
  bool purely_imaginary() const { return purely_imaginary_; }

 private:
  cplx value_;
  bool purely_imaginary_;
};

/// Value of a numerical result together with its achieved relative tolerance.
struct Estimate {
  double value = 0.0;
  double achieved_tol = 0.0;
};

/// -pi^2/(720 L^3): perfect-mirror Casimir energy per area.
double ideal_casimir_energy_per_area(const Geometry& geometry);

/// eta = e / ideal(L).
double reduction_factor(double energy_per_area, const Geometry& geometry);

// ---------------------------------------------------------------------------
// SI boundary. Only the CLI should need these.

namespace si {
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kC = 299792458.0;              // m/s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kHbarEv = 6.582119569e-16;     // eV s
}  // namespace si

/// Conversions for a fixed plasma frequency omega_p [rad/s].
class UnitSystem {
 public:
  explicit UnitSystem(double omega_p_rad_s);

  double omega_p() const { return omega_p_; }

  double frequency_to_internal(double rad_s) const { return rad_s / omega_p_; }
  double frequency_to_si(double x) const { return x * omega_p_; }
  double distance_to_internal(double meters) const { return meters * omega_p_ / si::kC; }
  double distance_to_si(double x) const { return x * si::kC / omega_p_; }
  double temperature_to_internal(double kelvin) const {
    return si::kBoltzmann * kelvin / (si::kHbar * omega_p_);
  }
  double temperature_to_si(double t) const { return t * si::kHbar * omega_p_ / si::kBoltzmann; }
  /// Energy per area [J/m^2] from internal units.
  double energy_per_area_to_si(double e) const;
  double energy_per_area_to_internal(double j_per_m2) const;

 private:
  double omega_p_;
};

/// Photon energy in eV to angular frequency in rad/s.
double ev_to_rad_s(double ev);

}  // namespace casimir
