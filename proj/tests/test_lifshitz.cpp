#include <doctest.h>

#include <cmath>

#include "casimir/eddy.hpp"
#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;

TEST_CASE("imaginary-axis susceptibility") {
  CHECK(imaginary_axis_susceptibility(0.0, MaterialParams::plasma()) == 1.0);
  CHECK(imaginary_axis_susceptibility(0.0, MaterialParams::drude(0.1)) == 0.0);
  CHECK(imaginary_axis_susceptibility(0.3, MaterialParams::drude(0.1)) == doctest::Approx(0.75));
}

TEST_CASE("T = 0 energy: additivity, sign, limits") {
  const auto m = MaterialParams::drude(1e-3);
  const auto g = Geometry::from_wavelength_ratio(1.0, m);
  const auto e = casimir_energy_T0(g, m);
  CHECK(e.total == e.te + e.tm);
  CHECK(e.total < 0.0);
  CHECK(e.te < 0.0);
  CHECK(e.eta == doctest::Approx(e.total / ideal_casimir_energy_per_area(g)));

  CHECK(std::abs(casimir_energy_T0(Geometry(1e4), MaterialParams::plasma()).eta - 1.0) < 1e-3);
  CHECK(casimir_energy_T0(Geometry(1e-3), MaterialParams::plasma(1e-3)).eta < 1e-4);

  const auto plasma = casimir_energy_T0(g, MaterialParams::plasma());
  const auto weak = casimir_energy_T0(g, MaterialParams::drude(1e-4));
  CHECK(std::abs(weak.total / plasma.total - 1.0) < 1e-3);
}

TEST_CASE("|E| decreases with L") {
  const auto m = MaterialParams::drude(1e-3);
  double previous = INFINITY;
  for (double L : {0.05, 0.2, 1.0, 5.0, 25.0}) {
    const double e = std::abs(casimir_energy_T0(Geometry(L), m).total);
    CHECK(e < previous);
    previous = e;
  }
}

TEST_CASE("low-temperature Matsubara sum approaches the T = 0 integral") {
  const auto m = MaterialParams::drude(1e-3);
  const auto g = Geometry::from_wavelength_ratio(1.0, m);
  const auto f = free_energy_T(g, m, Temperature(0.001 / g.distance));
  const auto e = casimir_energy_T0(g, m);
  CHECK(std::abs(f.total / e.total - 1.0) < 5e-3);
  CHECK(f.total == f.te + f.tm);
  CHECK(f.matsubara_terms > 10);
}

TEST_CASE("high temperature: plasma TE is the zero-frequency term, Drude TE nearly vanishes") {
  const auto drude = MaterialParams::drude(1e-3);
  const auto g = Geometry::from_wavelength_ratio(10.0, drude);
  const Temperature t(5.0 / g.distance);
  const auto fp = free_energy_T(g, MaterialParams::plasma(), t);
  const double ref = plasma_highT_TE_reference(g, MaterialParams::plasma(), t).value;
  CHECK(std::abs(fp.te / ref - 1.0) < 0.01);
  const auto fd = free_energy_T(g, drude, t);
  CHECK(std::abs(fd.te) < 0.1 * std::abs(fp.te));
  CHECK(std::abs(propagating_minus_eddy_check_TE(g, drude, t)) < 0.1);
  CHECK_THROWS_AS(propagating_minus_eddy_check_TE(g, MaterialParams::plasma(), t), NoCutError);
  CHECK_THROWS_AS(free_energy_T(g, drude, Temperature(0.0)), DomainError);
}

TEST_CASE("Drude n = 0 TE term is exactly zero") {
  const auto m = MaterialParams::drude(1e-2);
  const auto r = round_trip_integral(0.0, Geometry(1.0), m, {});
  CHECK(r.te == 0.0);
  CHECK(r.tm < 0.0);
}

TEST_CASE("results do not depend on the kernel ISA") {
  using namespace casimir::kernels;
  if (!isa_available(Isa::Avx2)) return;
  const Isa before = active_isa();
  const auto m = MaterialParams::drude(1e-3);
  const auto g = Geometry::from_wavelength_ratio(0.3, m);
  set_active_isa(Isa::Scalar);
  const auto a = casimir_energy_T0(g, m);
  set_active_isa(Isa::Avx2);
  const auto b = casimir_energy_T0(g, m);
  set_active_isa(before);
  CHECK(std::abs(a.total / b.total - 1.0) < 1e-12);
}
