#pragma once

// Eddy-current (Foucault) modes: the continuum of purely imaginary
// eigenfrequencies -i xi, xi in (xi_low(k), gamma), of a Drude metal.
//
// Their Casimir energy is written with the cumulative L-dependent change in
// the number of cut modes below xi,
//
//     N(xi, k) = -(1/pi) Im ln[1 - r_p^2(-i xi - 0+) exp(-2 kappa L)],
//
// so that, per unit area and polarization,
//
//     E_eddy(T=0)    = int k dk/2pi  int dxi  d/dxi[ xi ln(xi/Lambda) / 2pi ] N(xi, k)
//     F_eddy(high T) = -int k dk/2pi int dxi  (k_B T / 2 xi) N(xi, k)
//
// The 1/2 in the high-temperature form is the prime weight of a purely
// imaginary mode; with it the TE eddy free energy cancels the plasma-model
// zero-frequency term for good conductors.

#include <functional>
#include <optional>

#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"
#include "casimir/units.hpp"

namespace casimir {

enum class EddyRegime { ZeroT, HighT };

struct EddyResult {
  double value = 0.0;
  Polarization polarization = Polarization::TE;
  EddyRegime regime = EddyRegime::ZeroT;
  /// Set for ZeroT results, which depend on the cutoff.
  std::optional<CutoffLambda> cutoff_used;
  double achieved_tol = 0.0;
  /// True when the material has no cut (plasma model); value is exactly 0.
  bool no_cut = false;
};

/// N(xi, k) as defined above.
double cut_mode_count(Polarization pol, double xi, double k, const Geometry& geometry,
                      const MaterialParams& m);

/// int k dk/2pi int_{cut} dxi weight(xi) N(xi, k), iterated with xi innermost.
Estimate integrate_over_cut(Polarization pol, const Geometry& geometry, const MaterialParams& m,
                            const std::function<double(double)>& weight, double abs_scale,
                            const QuadratureConfig& quad);

EddyResult eddy_energy_T0(Polarization pol, const Geometry& geometry, const MaterialParams& m,
                          const CutoffLambda& cutoff, const QuadratureConfig& quad = {});

EddyResult eddy_free_energy_highT(Polarization pol, const Geometry& geometry,
                                  const MaterialParams& m, const Temperature& temp,
                                  const QuadratureConfig& quad = {});

/// int k dk/2pi int dxi N: the cutoff-sensitive part, E(L2) - E(L1) = ln(L1/L2)/(2 pi) * this.
Estimate eddy_cut_mode_integral(Polarization pol, const Geometry& geometry,
                                const MaterialParams& m, const QuadratureConfig& quad = {});

/// (k_B T / 2) int k dk/2pi ln(1 - r_TE,plasma(0, k)^2 exp(-2kL)).
Estimate plasma_highT_TE_reference(const Geometry& geometry, const MaterialParams& m,
                                   const Temperature& temp, const QuadratureConfig& quad = {});

/// F_eddy^TE(high T) / (-plasma_highT_TE_reference). Independent of T.
double te_cancellation_ratio(const Geometry& geometry, const MaterialParams& m,
                             const Temperature& temp, const QuadratureConfig& quad = {});

/// The classical form needs k_B T above the top of the cut, xi = gamma.
inline bool eddy_high_temperature_regime(const MaterialParams& m, const Temperature& temp) {
  return temp.t >= m.gamma;
}

}  // namespace casimir
