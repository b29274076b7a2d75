#include <cmath>

#include "casimir/kernels.hpp"

namespace casimir::kernels {

void round_trip_log_scalar(const RoundTripParams& p, const double* kappa, double* te, double* tm,
                           std::size_t n) {
  const double s = p.susceptibility;
  const bool static_limit = p.xi_sq == 0.0;
  const double inv_xi_sq = static_limit ? 0.0 : 1.0 / p.xi_sq;
  const double eps = 1.0 + s * inv_xi_sq;
  const double minus_two_L = -2.0 * p.distance;

  for (std::size_t i = 0; i < n; ++i) {
    const double kap = kappa[i];
    const double km = std::sqrt(kap * kap + s);
    const double sum = kap + km;
    const double q = std::exp(minus_two_L * kap);

    // kappa - kappa_m = -s / (kappa + kappa_m)
    const double r_te = -s / (sum * sum);
    te[i] = std::log1p(-r_te * r_te * q);

    if (static_limit) {
      tm[i] = std::log1p(-q);
    } else {
      // eps*kappa - kappa_m = s*(kappa/xi^2 - 1/(kappa + kappa_m))
      const double r_tm = s * (kap * inv_xi_sq - 1.0 / sum) / (eps * kap + km);
      tm[i] = std::log1p(-r_tm * r_tm * q);
    }
  }
}

}  // namespace casimir::kernels
