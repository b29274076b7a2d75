#include <doctest.h>

#include <cmath>
#include <random>

#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/plasmon.hpp"

using namespace casimir;

TEST_CASE("quasi-static dispersion") {
  const auto plasma = MaterialParams::plasma();
  const auto far = quasistatic_frequencies(1.0, std::nullopt, plasma);
  CHECK(far.omega_plus().value().real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(far.omega_minus().value().real() == doctest::Approx(std::sqrt(0.5)));

  const auto lossless = quasistatic_frequencies(0.3, 2.0, plasma);
  CHECK(lossless.omega_plus().value().imag() == 0.0);
  CHECK(lossless.omega_minus().value().imag() == 0.0);
  const double e = std::exp(-0.6);
  CHECK(lossless.omega_plus().value().real() == doctest::Approx(std::sqrt(0.5 * (1 + e))));
  CHECK(lossless.omega_minus().value().real() == doctest::Approx(std::sqrt(0.5 * (1 - e))));

  // exp(-kL) = 1/2 with gamma = 0.1
  const auto damped = quasistatic_frequencies(std::log(2.0), 1.0, MaterialParams::drude(0.1));
  CHECK(damped.omega_plus().value().real() == doctest::Approx(std::sqrt(0.75 - 0.0025)).epsilon(1e-14));
  CHECK(damped.omega_plus().value().imag() == doctest::Approx(-0.05).epsilon(1e-14));

  CHECK_THROWS_AS(quasistatic_frequencies(0.0, 1.0, plasma), DomainError);
  CHECK_THROWS_AS(quasistatic_frequencies(1.0, -1.0, plasma), DomainError);
}

TEST_CASE("overdamped minus branch") {
  const double gamma = 0.1;
  const auto m = MaterialParams::drude(gamma);
  const double k = 1e-6;
  const auto p = quasistatic_frequencies(k, 1.0, m);
  REQUIRE(p.overdamped_minus());
  REQUIRE(p.minus.roots.size() == 2);
  const double x1 = -p.minus.roots[0].value().imag();
  const double x2 = -p.minus.roots[1].value().imag();
  CHECK(p.minus.roots[0].purely_imaginary());
  CHECK(x1 + x2 == doctest::Approx(gamma).epsilon(1e-15));
  CHECK(x1 * x2 == doctest::Approx(-0.5 * std::expm1(-k)).epsilon(1e-14));
  CHECK(p.minus.weighted_sum().imag() == doctest::Approx(-gamma / 2).epsilon(1e-15));
  CHECK_FALSE(p.plus.overdamped);
}

TEST_CASE("overdamping thresholds sit on the branch change") {
  const auto m = MaterialParams::drude(0.2);
  const Geometry g(1.5);
  const auto ks = overdamping_thresholds(g, m);
  REQUIRE(ks.size() == 1);
  CHECK(quasistatic_frequencies(ks[0] * (1 - 1e-6), g.distance, m).overdamped_minus());
  CHECK_FALSE(quasistatic_frequencies(ks[0] * (1 + 1e-6), g.distance, m).overdamped_minus());
  // integrand is continuous there
  const CutoffLambda c(1.0);
  const double below = plasmon_energy_integrand(ks[0] * (1 - 1e-9), g, m, c);
  const double above = plasmon_energy_integrand(ks[0] * (1 + 1e-9), g, m, c);
  CHECK(std::abs(below - above) < 1e-6 * std::abs(below));
  CHECK(overdamping_thresholds(g, MaterialParams::plasma()).empty());
}

TEST_CASE("mode term examples") {
  const CutoffLambda one(1.0);
  CHECK(mode_term(ComplexFrequency(cplx(1.0, 0.0)), one) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(mode_term(ComplexFrequency::imaginary(1.0), one)) < 1e-16);
  CHECK(mode_term(ComplexFrequency::imaginary(0.1), one) == doctest::Approx(0.0366469).epsilon(1e-5));
  CHECK(mode_term(ComplexFrequency::imaginary(0.1), one) ==
        doctest::Approx(-0.1 / (2 * kPi) * std::log(0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(mode_term(ComplexFrequency(cplx(0.0)), one), DomainError);
  CHECK(prime_weight(ComplexFrequency::imaginary(0.2)) == 0.5);
  CHECK(prime_weight(ComplexFrequency(cplx(0.3, -0.2))) == 1.0);
}

TEST_CASE("mode term equals a literal complex evaluation") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const cplx z(std::pow(10.0, u(rng)), -std::pow(10.0, u(rng)));
    const double lambda = std::pow(10.0, u(rng));
    const cplx literal = z - cplx(0, 2) * z / kPi * std::log(z / lambda);
    CHECK(mode_term(ComplexFrequency(z), CutoffLambda(lambda)) ==
          doctest::Approx(0.5 * literal.real()).epsilon(1e-12));
  }
}

TEST_CASE("sum rule holds for random configurations") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-4.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const auto m = MaterialParams::drude(std::pow(10.0, u(rng) / 2));
    const Geometry g(std::pow(10.0, u(rng)));
    const double k = std::pow(10.0, u(rng));
    CHECK(std::abs(sum_rule_residual(k, g, m)) < 1e-13);
  }
  CHECK(sum_rule_residual(0.3, Geometry(1.0), MaterialParams::plasma()) == 0.0);
  CHECK(std::abs(sum_rule_residual(1e-6, Geometry(1.0), MaterialParams::drude(0.1))) < 1e-13);
}

TEST_CASE("plasmon energy is cutoff independent") {
  for (double gamma : {0.0, 0.01, 0.3}) {
    const auto m = MaterialParams::drude(gamma);
    const auto g = Geometry::from_wavelength_ratio(0.05, m);
    const double ref = plasmon_energy(g, m, CutoffLambda(1.0)).value;
    for (double lambda : {std::max(gamma, 1e-3), 0.37, 2.0, 100.0}) {
      CHECK(std::abs(plasmon_energy(g, m, CutoffLambda(lambda)).value / ref - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("short-distance expansion") {
  const auto m = MaterialParams::plasma();
  const auto g = Geometry::from_wavelength_ratio(0.01, m);
  const double asym = plasmon_energy_asymptotic(g, m);
  CHECK(asym == doctest::Approx(ideal_casimir_energy_per_area(g) * 1.5 * 1.193 * 0.01).epsilon(1e-15));
  CHECK(kDissipativeCoefficient == doctest::Approx(0.18512).epsilon(1e-4));
  const double eta = plasmon_energy(g, m, CutoffLambda(1.0)).value / ideal_casimir_energy_per_area(g);
  CHECK(eta == doctest::Approx(0.0179).epsilon(0.02));
  // damping weakens the attraction
  CHECK(plasmon_energy_asymptotic(g, MaterialParams::drude(0.01)) > asym);
}

TEST_CASE("plasmon energy stays finite at large separation") {
  const auto m = MaterialParams::plasma();
  const auto g = Geometry::from_wavelength_ratio(10.0, m);
  const double e = plasmon_energy(g, m, CutoffLambda(1.0)).value;
  CHECK(std::isfinite(e));
  CHECK(e < 0.0);
}
