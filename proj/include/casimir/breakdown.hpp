#pragma once

// Full mode decomposition at one parameter point: the Lifshitz totals next to
// the plasmon and eddy-current contributions and what is left over.

#include <optional>
#include <string>

#include "casimir/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir {

struct DecompositionInput {
  MaterialParams material;
  Geometry geometry{1.0};
  CutoffLambda cutoff{1.0};
  /// When set, the Lifshitz totals are Matsubara free energies at this
  /// temperature and the high-temperature TE columns are filled in.
  std::optional<Temperature> temperature;
  QuadratureConfig quad;
};

struct EnergyBreakdown {
  double ideal = 0.0;
  double total = 0.0;
  double total_te = 0.0;
  double total_tm = 0.0;
  /// True when total/te/tm come from the Matsubara sum.
  bool finite_temperature = false;
  double plasmon = 0.0;
  double plasmon_asymptotic = 0.0;
  double eddy_te = 0.0;
  double eddy_tm = 0.0;
  bool no_cut = false;
  std::optional<double> eddy_te_highT;
  std::optional<double> plasma_te_highT;
  /// k_B T below gamma: the high-temperature eddy columns are outside their regime.
  bool below_eddy_regime = false;
  /// total - plasmon - eddy_te - eddy_tm.
  double remainder = 0.0;
  double eta_total = 0.0;
  /// Worst estimated absolute error over all quantities, in units of |ideal|.
  double achieved_tol = 0.0;
};

/// Throws NumericalError if any integral misses its tolerance.
EnergyBreakdown decompose(const DecompositionInput& in);

}  // namespace casimir
