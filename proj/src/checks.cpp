#include "casimir/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "casimir/eddy.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/plasmon.hpp"
#include "casimir/reflection.hpp"

namespace casimir::checks {

namespace {

constexpr std::uint64_t kSeed = 20240611;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

CheckReport timed(const char* name, double budget, const std::function<CheckReport()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport r;
  try {
    r = body();
  } catch (const NumericalError& e) {
    r.measured = e.best_estimate();
    r.passed = false;
    r.detail = std::string("numerical failure: ") + e.what() + " (achieved tol " + fmt(e.achieved_tol()) + ")";
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.budget_seconds = budget;
  if (r.seconds > budget) {
    r.passed = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("exceeded time budget of ") + fmt(budget) + " s";
  }
  return r;
}

}  // namespace

CheckReport sum_rule() {
  return timed("sum-rule", 1.0, [] {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int overdamped = 0;
    for (int i = 0; i < 100; ++i) {
      const double L = log_uniform(rng, 1e-2, 1e2);
      double k;
      double gamma;
      if (i % 2 == 0) {
        k = log_uniform(rng, 1e-3, 1e2) / L;
        gamma = log_uniform(rng, 1e-4, 0.5);
      } else {
        // small kL and strong damping: the minus branch goes overdamped
        k = log_uniform(rng, 1e-4, 1e-1) / L;
        gamma = 0.05 + 1.95 * unit(rng);
      }
      const auto m = MaterialParams::drude(gamma);
      const Geometry g(L);
      if (quasistatic_frequencies(k, L, m).overdamped_minus()) ++overdamped;
      worst = std::max(worst, std::abs(sum_rule_residual(k, g, m)));
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 1e-13;
    r.criterion = "max |Im sum' w (L) - Im sum' w (inf)| < 1e-13";
    r.passed = worst < r.tolerance;
    r.detail = "100 random (k, L, gamma), " + std::to_string(overdamped) + " with overdamped minus branch";
    return r;
  });
}

CheckReport lambda_independence() {
  return timed("lambda-independence", 60.0, [] {
    double worst = 0.0;
    std::ostringstream det;
    for (double ratio : {0.01, 0.1}) {
      for (double gamma : {0.0, 0.01}) {
        const auto m = MaterialParams::drude(gamma);
        const auto g = Geometry::from_wavelength_ratio(ratio, m);
        const double lo = std::max(gamma, 1e-3);
        const double hi = 100.0;
        double ref = 0.0;
        double spread = 0.0;
        constexpr int kPoints = 7;
        for (int i = 0; i < kPoints; ++i) {
          const double lambda = lo * std::pow(hi / lo, static_cast<double>(i) / (kPoints - 1));
          const double e = plasmon_energy(g, m, CutoffLambda(lambda)).value;
          if (i == 0) ref = e;
          spread = std::max(spread, std::abs(e / ref - 1.0));
        }
        det << "L/lp=" << ratio << " g=" << gamma << ": " << fmt(spread) << "; ";
        worst = std::max(worst, spread);
      }
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 1e-6;
    r.criterion = "max relative change of E_plasmon over Lambda < 1e-6";
    r.passed = worst < r.tolerance;
    r.detail = det.str();
    return r;
  });
}

CheckReport short_distance() {
  return timed("short-distance", 120.0, [] {
    const double ratio = 0.01;
    double worst_ratio = 0.0;
    double worst_shift = 0.0;
    double e0 = 0.0;
    std::ostringstream det;
    for (double gamma : {0.0, 0.005, 0.01}) {
      const auto m = MaterialParams::drude(gamma);
      const auto g = Geometry::from_wavelength_ratio(ratio, m);
      const double lambda = gamma > 0.0 ? 10.0 * gamma : 1.0;
      const double e = plasmon_energy(g, m, CutoffLambda(lambda)).value;
      const double dev = std::abs(e / plasmon_energy_asymptotic(g, m) - 1.0);
      worst_ratio = std::max(worst_ratio, dev);
      det << "g=" << gamma << ": |E/E_asym - 1|=" << fmt(dev);
      if (gamma == 0.0) {
        e0 = e;
      } else {
        const double predicted =
            ideal_casimir_energy_per_area(g) * 1.5 * (-kDissipativeCoefficient * gamma * g.distance);
        const double shift_dev = std::abs((e - e0) / predicted - 1.0);
        worst_shift = std::max(worst_shift, shift_dev);
        det << ", shift mismatch " << fmt(shift_dev);
      }
      det << "; ";
    }
    CheckReport r;
    r.measured = worst_ratio;
    r.tolerance = 0.02;
    r.criterion = "|E/E_asym - 1| < 0.02 and gamma shift within 10% of the dissipative term";
    r.passed = worst_ratio < r.tolerance && worst_shift < 0.1;
    r.detail = det.str();
    return r;
  });
}

CheckReport plasmon_dominance() {
  return timed("plasmon-dominance", 120.0, [] {
    const auto m = MaterialParams::drude(1e-3);
    const auto g = Geometry::from_wavelength_ratio(0.01, m);
    const double pl = plasmon_energy(g, m, CutoffLambda(1e-2)).value;
    const LifshitzBreakdown lif = casimir_energy_T0(g, m);
    CheckReport r;
    r.measured = pl / lif.total;
    r.tolerance = 0.05;
    r.criterion = "E_plasmon / E_Lifshitz in [0.95, 1.05]";
    r.passed = std::abs(r.measured - 1.0) <= r.tolerance;
    r.detail = "L/lp=0.01, g=1e-3";
    return r;
  });
}

CheckReport perfect_mirror() {
  return timed("perfect-mirror", 30.0, [] {
    const Geometry g(1e4);
    const double plasma = casimir_energy_T0(g, MaterialParams::plasma()).eta;
    const double drude = casimir_energy_T0(g, MaterialParams::drude(1e-4)).eta;
    CheckReport r;
    r.measured = std::max(std::abs(plasma - 1.0), std::abs(drude - 1.0));
    r.tolerance = 1e-3;
    r.criterion = "|eta - 1| < 1e-3 at omega_p L = 1e4";
    r.passed = r.measured < r.tolerance;
    r.detail = "eta plasma " + fmt(plasma) + ", eta drude(g=1e-4) " + fmt(drude);
    return r;
  });
}

CheckReport eddy_repulsion() {
  return timed("eddy-repulsion", 300.0, [] {
    const double gamma = 1e-3;
    const auto m = MaterialParams::drude(gamma);
    double worst = std::numeric_limits<double>::infinity();
    std::ostringstream failing;
    for (double ratio : {0.1, 1.0, 10.0}) {
      const auto g = Geometry::from_wavelength_ratio(ratio, m);
      for (double c : {1.0, 10.0, 100.0}) {
        const double e = eddy_energy_T0(Polarization::TE, g, m, CutoffLambda(c * gamma)).value;
        const double scaled = e / std::abs(ideal_casimir_energy_per_area(g));
        worst = std::min(worst, scaled);
        if (!(e > 0.0)) failing << "L/lp=" << ratio << " Lambda/g=" << c << ": " << fmt(scaled) << "; ";
      }
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 0.0;
    r.criterion = "min E_eddy^TE / |E_ideal| > 0";
    r.passed = worst > 0.0;
    r.detail = failing.str().empty() ? "all 9 points repulsive" : "non-repulsive: " + failing.str();
    return r;
  });
}

namespace {
struct ClassicalPoint {
  double ratio;  // L / lambda_p
  double tl;     // k_B T L / (hbar c)
};
constexpr ClassicalPoint kClassical[] = {{10.0, 5.0}, {30.0, 10.0}};
}  // namespace

CheckReport te_cancellation() {
  return timed("te-cancellation", 300.0, [] {
    const auto m = MaterialParams::drude(1e-3);
    double worst = 0.0;
    std::ostringstream det;
    for (const auto& p : kClassical) {
      const auto g = Geometry::from_wavelength_ratio(p.ratio, m);
      const double ratio = te_cancellation_ratio(g, m, Temperature(p.tl / g.distance));
      worst = std::max(worst, std::abs(ratio - 1.0));
      det << "L/lp=" << p.ratio << " TL=" << p.tl << ": " << fmt(ratio) << "; ";
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 0.05;
    r.criterion = "|F_eddy^TE / (-F_plasma^TE) - 1| < 0.05";
    r.passed = worst < r.tolerance;
    r.detail = det.str();
    return r;
  });
}

CheckReport drude_plasma_gap() {
  return timed("drude-plasma-gap", 120.0, [] {
    const auto drude = MaterialParams::drude(1e-3);
    const auto plasma = MaterialParams::plasma();
    double worst = 0.0;
    std::ostringstream det;
    for (const auto& p : kClassical) {
      const auto g = Geometry::from_wavelength_ratio(p.ratio, drude);
      const Temperature t(p.tl / g.distance);
      const double fd = free_energy_T(g, drude, t).te;
      const double fp = free_energy_T(g, plasma, t).te;
      const double q = std::abs(fd) / std::abs(fp);
      worst = std::max(worst, q);
      det << "L/lp=" << p.ratio << " TL=" << p.tl << ": F_D=" << fmt(fd) << " F_P=" << fmt(fp) << "; ";
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 0.1;
    r.criterion = "|F_TE(Drude)| / |F_TE(plasma)| < 0.1";
    r.passed = worst < r.tolerance;
    r.detail = det.str();
    return r;
  });
}

CheckReport cut_side_oracle() {
  return timed("cut-side-oracle", 30.0, [] {
    const auto m = MaterialParams::drude(1e-3);
    constexpr int kGrid = 50;
    double worst = 0.0;
    std::ostringstream det;
    for (double ratio : {0.1, 1.0, 10.0}) {
      const auto g = Geometry::from_wavelength_ratio(ratio, m);
      for (auto pol : {Polarization::TE, Polarization::TM}) {
        double pol_worst = 0.0;
        for (int j = 0; j < kGrid; ++j) {
          const double k = std::pow(10.0, -3.0 + 4.0 * (j + 0.5) / kGrid);
          const CutInterval cut = cut_endpoints(k, m);
          for (int i = 0; i < kGrid; ++i) {
            const double xi = cut.xi_low + cut.width * (i + 0.5) / kGrid;
            const double a = cut_phase(pol, xi, k, g, m);
            const double b = cut_phase_offset(pol, xi, k, g, m, 1e-8);
            if (a == 0.0 && b == 0.0) continue;
            pol_worst = std::max(pol_worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
          }
        }
        det << "L/lp=" << ratio << " " << to_string(pol) << ": " << fmt(pol_worst) << "; ";
        worst = std::max(worst, pol_worst);
      }
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 1e-6;
    r.criterion = "max relative difference, analytic side limit vs offset evaluation < 1e-6";
    r.passed = worst < r.tolerance;
    r.detail = det.str();
    return r;
  });
}

CheckReport mode_term_imaginary() {
  return timed("mode-term", 1.0, [] {
    std::mt19937_64 rng(kSeed + 1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double xi = log_uniform(rng, 1e-6, 1e2);
      const double lambda = log_uniform(rng, 1e-4, 1e3);
      const double got = mode_term(ComplexFrequency::imaginary(xi), CutoffLambda(lambda));
      const double lg = std::log(xi / lambda);
      const double want = -xi / (2.0 * kPi) * lg;
      const double scale = xi * (1.0 + std::abs(lg)) / (2.0 * kPi);
      worst = std::max(worst, std::abs(got - want) / scale);
    }
    CheckReport r;
    r.measured = worst;
    r.tolerance = 1e-14;
    r.criterion = "max |mode_term(-i xi) + xi ln(xi/Lambda)/2pi| / scale < 1e-14";
    r.passed = worst < r.tolerance;
    r.detail = "1000 random (xi, Lambda)";
    return r;
  });
}

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> all = {
      {"sum-rule", "imaginary part of the weighted mode sum is L-independent", sum_rule},
      {"lambda-independence", "plasmon energy does not depend on the cutoff", lambda_independence},
      {"short-distance", "plasmon energy matches its short-distance expansion", short_distance},
      {"plasmon-dominance", "plasmons carry the full energy at short distance", plasmon_dominance},
      {"perfect-mirror", "Lifshitz energy approaches the ideal value for large omega_p L", perfect_mirror},
      {"eddy-repulsion", "zero-temperature TE eddy energy is positive", eddy_repulsion},
      {"te-cancellation", "high-T TE eddy energy cancels the plasma TE term", te_cancellation},
      {"drude-plasma-gap", "high-T TE free energy is much smaller for Drude than plasma", drude_plasma_gap},
      {"cut-side-oracle", "analytic cut-side limit agrees with offset evaluation", cut_side_oracle},
      {"mode-term", "mode term of an imaginary frequency has its closed form", mode_term_imaginary},
  };
  return all;
}

const CheckInfo* find(const std::string& name) {
  for (const auto& c : registry()) {
    if (name == c.name) return &c;
  }
  return nullptr;
}

std::string format_line(const CheckReport& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "measured %.6g, ", r.measured);
  std::string line = std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + buf + r.criterion;
  std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
  line += buf;
  if (!r.detail.empty()) line += " [" + r.detail + "]";
  return line;
}

}  // namespace casimir::checks
