#pragma once

// Lifshitz energy and free energy between two identical Drude/plasma
// half-spaces, from imaginary-frequency round-trip integrals. These are the
// reference totals against which the mode decomposition is checked.

#include "casimir/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir {

struct LifshitzBreakdown {
  double total = 0.0;
  double te = 0.0;
  double tm = 0.0;
  /// total / ideal_casimir_energy_per_area(L)
  double eta = 0.0;
  double achieved_tol = 0.0;
  /// Matsubara terms summed explicitly (0 for the T = 0 integral).
  long matsubara_terms = 0;
};

/// (epsilon(i xi) - 1) xi^2, with the xi -> 0 limit of the respective model.
double imaginary_axis_susceptibility(double xi, const MaterialParams& m);

/// int_xi^inf kappa dkappa ln(1 - r_p^2 exp(-2 kappa L)) for both polarizations at fixed xi.
struct RoundTripIntegral {
  double te = 0.0;
  double tm = 0.0;
  double achieved_tol = 0.0;
};
RoundTripIntegral round_trip_integral(double xi, const Geometry& geometry, const MaterialParams& m,
                                      const QuadratureConfig& quad);

/// E/A = int_0^inf dxi/2pi int k dk/2pi sum_p ln(1 - r_p^2 exp(-2 kappa L)).
LifshitzBreakdown casimir_energy_T0(const Geometry& geometry, const MaterialParams& m,
                                    const QuadratureConfig& quad = {});

/// F/A = k_B T sum'_n int k dk/2pi sum_p ln(...) at xi_n = 2 pi n k_B T.
LifshitzBreakdown free_energy_T(const Geometry& geometry, const MaterialParams& m,
                                const Temperature& temp, const QuadratureConfig& quad = {});

/// Drude TE free energy over |F_eddy^TE(high T)|. Near zero when the eddy
/// and propagating TE contributions cancel. Throws NoCutError for gamma = 0.
double propagating_minus_eddy_check_TE(const Geometry& geometry, const MaterialParams& m,
                                       const Temperature& temp, const QuadratureConfig& quad = {});

}  // namespace casimir
