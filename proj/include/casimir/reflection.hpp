#pragma once

// Drude/plasma permittivity and single-interface Fresnel coefficients at
// complex frequency, including evaluation on the left rim of the eddy-current
// branch cut that runs along the negative imaginary axis.

#include "casimir/units.hpp"

namespace casimir {

enum class Polarization { TE, TM };

inline const char* to_string(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

enum class BranchSide {
  /// Ordinary evaluation: Im(k_m) >= 0 and Im(k_z) >= 0.
  OnAxis,
  /// omega = -i xi approached from Re(omega) < 0 (the "-0+" side of the cut).
  CutLeft,
};

struct EvaluationPoint {
  cplx omega;
  double k;
  BranchSide side;

  EvaluationPoint(cplx omega, double k, BranchSide side = BranchSide::OnAxis);

  static EvaluationPoint imaginary_axis(double xi, double k) { return {cplx(0.0, xi), k}; }
  static EvaluationPoint cut_left(double xi, double k) {
    return {cplx(0.0, -xi), k, BranchSide::CutLeft};
  }
};

/// eps(omega) = 1 - omega_p^2 / (omega (omega + i gamma)).
cplx epsilon(cplx omega, const MaterialParams& m);

/// k_m = sqrt(eps omega^2 - k^2) on the branch selected by pt.side.
cplx medium_wavenumber(const EvaluationPoint& pt, const MaterialParams& m);

/// Vacuum normal wavenumber k_z = sqrt(omega^2 - k^2); i*kappa on the imaginary axis.
cplx vacuum_wavenumber(const EvaluationPoint& pt);

cplx fresnel_r(Polarization pol, const EvaluationPoint& pt, const MaterialParams& m);

/// Support of the eddy-current cut at lateral wavevector k: xi in (xi_low, xi_high).
struct CutInterval {
  double xi_low;
  double xi_high;
  /// xi_high - xi_low, computed without cancellation.
  double width;

  bool contains(double xi) const { return xi > xi_low && xi < xi_high; }
};

/// Endpoints of the cut: xi_high = gamma, xi_low solves
/// -xi^2 + omega_p^2 xi / (gamma - xi) = k^2. Throws NoCutError for gamma = 0.
CutInterval cut_endpoints(double k, const MaterialParams& m);

/// Im ln[1 - r_p^2(-i xi - 0+) exp(-2 kappa L)], kappa = sqrt(xi^2 + k^2),
/// evaluated with the analytic side limit. Zero off the cut.
double cut_phase(Polarization pol, double xi, double k, const Geometry& geometry,
                 const MaterialParams& m);

/// Same quantity from explicit evaluation at omega = -offset - i xi with
/// principal branches, Richardson-extrapolated to zero offset from offset,
/// offset/2, offset/4 and offset/8. Cross-check only.
double cut_phase_offset(Polarization pol, double xi, double k, const Geometry& geometry,
                        const MaterialParams& m, double offset = 1e-8);

}  // namespace casimir
