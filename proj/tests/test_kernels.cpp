#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"
#include "casimir/reflection.hpp"

using namespace casimir;
using namespace casimir::kernels;

namespace {

// Literal reference for one kappa: Fresnel coefficients on the imaginary axis.
void literal(double xi, double kappa, double L, const MaterialParams& m, double& te, double& tm) {
  const double k = std::sqrt(std::max(kappa * kappa - xi * xi, 0.0));
  const EvaluationPoint pt = EvaluationPoint::imaginary_axis(xi, k);
  const double rte = fresnel_r(Polarization::TE, pt, m).real();
  const double rtm = fresnel_r(Polarization::TM, pt, m).real();
  const double q = std::exp(-2 * kappa * L);
  te = std::log1p(-rte * rte * q);
  tm = std::log1p(-rtm * rtm * q);
}

RoundTripParams params_for(double xi, double L, const MaterialParams& m) {
  return {L, xi * xi, m.omega_p * m.omega_p * xi / (xi + m.gamma)};
}

}  // namespace

TEST_CASE("scalar kernel matches literal Fresnel evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = MaterialParams::drude(std::pow(10.0, -4 + 3 * u(rng)));
    const double xi = std::pow(10.0, -3 + 4 * u(rng));
    const double L = std::pow(10.0, -1 + 2 * u(rng));
    const double kappa = xi * (1.0 + 5.0 * u(rng));
    double te_ref, tm_ref, te, tm;
    literal(xi, kappa, L, m, te_ref, tm_ref);
    round_trip_log_scalar(params_for(xi, L, m), &kappa, &te, &tm, 1);
    CHECK(te == doctest::Approx(te_ref).epsilon(1e-9));
    CHECK(tm == doctest::Approx(tm_ref).epsilon(1e-9));
  }
}

TEST_CASE("static limit: r_TM = 1 and plasma r_TE closed form") {
  const double L = 0.7;
  const double wp2 = 1.0;
  const std::vector<double> k = {0.01, 0.3, 1.0, 4.0};
  std::vector<double> te(k.size()), tm(k.size());
  round_trip_log_scalar({L, 0.0, wp2}, k.data(), te.data(), tm.data(), k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double s = std::sqrt(k[i] * k[i] + wp2);
    const double r = (k[i] - s) / (k[i] + s);
    CHECK(tm[i] == doctest::Approx(std::log1p(-std::exp(-2 * k[i] * L))).epsilon(1e-13));
    CHECK(te[i] == doctest::Approx(std::log1p(-r * r * std::exp(-2 * k[i] * L))).epsilon(1e-13));
  }
  // Drude at xi = 0: no TE reflection
  round_trip_log_scalar({L, 0.0, 0.0}, k.data(), te.data(), tm.data(), k.size());
  for (double v : te) CHECK(v == 0.0);
}

TEST_CASE("AVX2 elementary functions") {
  if (!isa_available(Isa::Avx2)) return;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-745.0, 0.0);
  std::vector<double> x(1001), y(1001);
  for (auto& v : x) v = u(rng);
  x[0] = 0.0;
  x[1] = -708.5;
  x[2] = -1e-300;
  detail::exp_avx2(x.data(), y.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -708.0) {
      CHECK(y[i] == 0.0);
    } else {
      CHECK(std::abs(y[i] - std::exp(x[i])) <= 4e-16 * std::exp(x[i]));
    }
  }
  std::uniform_real_distribution<double> w(-1.0, 0.0);
  for (auto& v : x) v = w(rng);
  x[0] = 0.0;
  x[1] = -1e-18;
  x[2] = -1.0 + 1e-12;
  x[3] = -0.5;
  detail::log1p_avx2(x.data(), y.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(y[i] - std::log1p(x[i])) <= 4e-16 * std::abs(std::log1p(x[i])) + 1e-300);
  }
}

TEST_CASE("AVX2 kernel equals scalar reference") {
  if (!isa_available(Isa::Avx2)) return;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = trial % 5 == 0 ? MaterialParams::plasma() : MaterialParams::drude(std::pow(10.0, -5 + 4 * u(rng)));
    const double xi = trial % 7 == 0 ? 0.0 : std::pow(10.0, -4 + 5 * u(rng));
    const double L = std::pow(10.0, -2 + 4 * u(rng));
    const RoundTripParams p = xi == 0.0 ? RoundTripParams{L, 0.0, m.has_cut() ? 0.0 : 1.0} : params_for(xi, L, m);
    const std::size_t n = 1 + trial % 23;  // exercise the remainder lanes
    std::vector<double> kappa(n), te_s(n), tm_s(n), te_v(n), tm_v(n);
    for (auto& k : kappa) k = std::max(xi, 1e-6) * std::pow(10.0, 3 * u(rng));
    round_trip_log_scalar(p, kappa.data(), te_s.data(), tm_s.data(), n);
    round_trip_log_avx2(p, kappa.data(), te_v.data(), tm_v.data(), n);
    // log1p(-x) has condition number x / ((1 - x) |log1p(-x)|); one ulp of
    // difference in x from FMA contraction is amplified by it as x -> 1.
    auto bound = [](double ref) {
      const double x = -std::expm1(ref);
      return 1e-13 * std::abs(ref) + 16 * 2.2e-16 * x / (1 - x) + 1e-300;
    };
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(te_v[i] - te_s[i]) <= bound(te_s[i]));
      CHECK(std::abs(tm_v[i] - tm_s[i]) <= bound(tm_s[i]));
    }
  }
}

TEST_CASE("dispatch selection") {
  CHECK(isa_available(Isa::Scalar));
  const Isa before = active_isa();
  set_active_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  if (!isa_available(Isa::Avx2)) CHECK_THROWS_AS(set_active_isa(Isa::Avx2), DomainError);
  set_active_isa(before);
  CHECK(std::string(isa_name(Isa::Avx2)) == "avx2");

  std::vector<double> k(4, 1.0), te(2), tm(4);
  CHECK_THROWS_AS(round_trip_log({1.0, 1.0, 1.0}, k, te, tm), DomainError);
}
