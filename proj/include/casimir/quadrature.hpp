#pragma once

// Adaptive Gauss-Kronrod (10/21) integration on finite and semi-infinite
// intervals, and bracketed root finding.
//
// Integrands are evaluated in batches of 21 nodes so that callers can route
// the evaluation through vectorized kernels. All routines are stateless and
// deterministic: the same input produces bit-identical output.

#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace casimir {

enum class TailTransform {
  /// x = a - s*ln(1 - t): suited to integrands decaying like exp(-x/s).
  ExpDecay,
  /// x = a + s*t/(1 - t): suited to power-law tails.
  AlgebraicDecay,
};

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  /// Maximum number of panels in the final partition.
  int max_subdivisions = 2000;
  /// Interior points where the integrand is not smooth. Sorted, inside the domain.
  std::vector<double> breakpoints;
  TailTransform tail_transform = TailTransform::ExpDecay;
  /// Length scale s of the semi-infinite map.
  double tail_scale = 1.0;

  void validate() const;
};

struct Interval {
  double lo;
  double hi;  // may be +infinity

  static Interval semi_infinite(double lo) { return {lo, std::numeric_limits<double>::infinity()}; }
};

struct IntegrationResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = false;

  /// Error estimate relative to |value| (absolute when value is zero).
  double achieved_tol() const;
};

/// Fills fx[i] = f(x[i]).
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> fx)>;

/// Adaptive integration. Never throws on non-convergence; inspect `converged`.
IntegrationResult integrate_unchecked(const BatchIntegrand& f, Interval domain,
                                      const QuadratureConfig& cfg);

/// Adaptive integration; throws NumericalError (carrying the best estimate)
/// when the subdivision budget is exhausted.
IntegrationResult integrate_batch(const BatchIntegrand& f, Interval domain,
                                  const QuadratureConfig& cfg);

template <class F>
IntegrationResult integrate(F&& f, Interval domain, const QuadratureConfig& cfg) {
  return integrate_batch(
      [&f](std::span<const double> x, std::span<double> fx) {
        for (std::size_t i = 0; i < x.size(); ++i) fx[i] = f(x[i]);
      },
      domain, cfg);
}

/// Brent's method on [lo, hi]. Requires g(lo) and g(hi) of opposite sign
/// (a zero at either end is returned directly). `tol` is the absolute
/// tolerance on the root location.
double find_root_bracketed(const std::function<double(double)>& g, double lo, double hi,
                           double tol, int* iterations = nullptr);

}  // namespace casimir
