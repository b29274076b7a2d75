#pragma once

// Coupled surface plasmons of two facing Drude mirrors in the quasi-static
// regime, and their contribution to the Casimir energy through the
// complex-frequency mode sum
//
//     E = (1/2) sum' Re[ w - (2 i w / pi) ln(w / Lambda) ]  evaluated at L minus at infinity,
//
// where purely imaginary frequencies carry weight 1/2.

#include <optional>
#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// One plasmon branch at fixed k. An underdamped branch has a single root
/// sqrt(w^2 - gamma^2/4) - i gamma/2; an overdamped branch has two purely
/// imaginary roots -i(gamma/2 +- sqrt(gamma^2/4 - w^2)).
struct PlasmonBranch {
  double undamped_sq;  // w_+-^2
  bool overdamped;
  std::vector<ComplexFrequency> roots;

  /// Sum over roots of (prime weight) * root.
  cplx weighted_sum() const;
};

struct PlasmonPair {
  PlasmonBranch plus;
  PlasmonBranch minus;
  double k;
  /// Empty for the isolated-interface reference configuration.
  std::optional<double> distance;

  const ComplexFrequency& omega_plus() const { return plus.roots.front(); }
  const ComplexFrequency& omega_minus() const { return minus.roots.front(); }
  bool overdamped_minus() const { return minus.overdamped; }
};

/// Weight of a root in the mode sum: 1/2 on the imaginary axis, 1 otherwise.
double prime_weight(const ComplexFrequency& w);

/// w_+-^2 = (omega_p^2/2)(1 +- exp(-kL)); distance = nullopt is L -> infinity.
PlasmonPair quasistatic_frequencies(double k, std::optional<double> distance,
                                    const MaterialParams& m);

/// prime_weight * (1/2) Re[w - (2 i w / pi) ln(w / Lambda)].
double mode_term(const ComplexFrequency& w, const CutoffLambda& cutoff);

/// Im[sum' w] at L minus the same at infinity; zero up to rounding.
double sum_rule_residual(double k, const Geometry& geometry, const MaterialParams& m);

/// Lateral wavevectors where a branch at separation L crosses into overdamping.
std::vector<double> overdamping_thresholds(const Geometry& geometry, const MaterialParams& m);

/// (k / 2 pi) * [sum over branches and roots of mode_term]_{L}^{infinity}.
double plasmon_energy_integrand(double k, const Geometry& geometry, const MaterialParams& m,
                                const CutoffLambda& cutoff);

/// Plasmonic Casimir energy per area.
Estimate plasmon_energy(const Geometry& geometry, const MaterialParams& m,
                        const CutoffLambda& cutoff, const QuadratureConfig& quad = {});

/// Short-distance expansion including the leading dissipative correction.
double plasmon_energy_asymptotic(const Geometry& geometry, const MaterialParams& m);

/// Coefficient of L / lambda_p in the short-distance expansion.
inline constexpr double kShortDistanceAlpha = 1.193;

/// 15 zeta(3) / pi^4.
inline constexpr double kDissipativeCoefficient = 15.0 * kZeta3 / (kPi * kPi * kPi * kPi);

}  // namespace casimir
