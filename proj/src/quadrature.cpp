#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 21-point abscissae on [-1, 1]; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208482001950, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr int kNodes = 21;

// Map from the integration variable t to x, for a possibly semi-infinite domain.
class DomainMap {
 public:
  DomainMap(Interval d, const QuadratureConfig& cfg)
      : lo_(d.lo), infinite_(std::isinf(d.hi)), transform_(cfg.tail_transform),
        scale_(cfg.tail_scale) {}

  bool infinite() const { return infinite_; }

  double t_of_x(double x) const {
    if (!infinite_) return x;
    const double u = x - lo_;
    if (transform_ == TailTransform::ExpDecay) return -std::expm1(-u / scale_);
    return u / (u + scale_);
  }

  // Returns x(t) and dx/dt.
  std::pair<double, double> x_of_t(double t) const {
    if (!infinite_) return {t, 1.0};
    const double one_minus = 1.0 - t;
    if (transform_ == TailTransform::ExpDecay) {
      return {lo_ - scale_ * std::log1p(-t), scale_ / one_minus};
    }
    return {lo_ + scale_ * t / one_minus, scale_ / (one_minus * one_minus)};
  }

 private:
  double lo_;
  bool infinite_;
  TailTransform transform_;
  double scale_;
};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double resabs;
};

class PanelRule {
 public:
  PanelRule(const BatchIntegrand& f, const DomainMap& map) : f_(f), map_(map) {}

  Panel apply(double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, kNodes> jac{};
    // Node order: 0..9 left, 10..19 right (mirrored), 20 center.
    for (int j = 0; j < 10; ++j) {
      const double dx = half * kXgk[j];
      fill(j, center - dx, jac);
      fill(10 + j, center + dx, jac);
    }
    fill(20, center, jac);
    // Nodes mapped to infinity carry zero weight; hand the integrand a finite
    // stand-in so it never sees x = inf.
    for (int i = 0; i < kNodes; ++i) {
      if (std::isfinite(x_[i])) continue;
      jac[i] = 0.0;
      for (int j = 0; j < kNodes; ++j) {
        if (std::isfinite(x_[j])) {
          x_[i] = x_[j];
          break;
        }
      }
    }

    f_(std::span<const double>(x_.data(), kNodes), std::span<double>(fx_.data(), kNodes));
    for (int i = 0; i < kNodes; ++i) {
      double v = fx_[i] * jac[i];
      if (jac[i] == 0.0) v = 0.0;
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x_[i];
        throw NumericalError(os.str(), std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::infinity());
      }
      fx_[i] = v;
    }

    const double fc = fx_[20];
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (int j = 0; j < 10; ++j) {
      const double sum = fx_[j] + fx_[10 + j];
      resk += kWgk[j] * sum;
      resabs += kWgk[j] * (std::abs(fx_[j]) + std::abs(fx_[10 + j]));
      if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
      resasc += kWgk[j] * (std::abs(fx_[j] - mean) + std::abs(fx_[10 + j] - mean));
    }

    const double ah = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
      err = std::max(50.0 * kEps * resabs, err);
    }
    return {a, b, resk * half, err, resabs};
  }

 private:
  void fill(int i, double t, std::array<double, kNodes>& jac) {
    const auto [x, dxdt] = map_.x_of_t(t);
    x_[i] = x;
    jac[i] = std::isfinite(dxdt) ? dxdt : 0.0;
  }

  const BatchIntegrand& f_;
  const DomainMap& map_;
  std::array<double, kNodes> x_{};
  std::array<double, kNodes> fx_{};
};

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(abs_tol >= 0.0)) throw DomainError("abs_tol must be non-negative");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
  if (!(tail_scale > 0.0) || !std::isfinite(tail_scale)) {
    throw DomainError("tail_scale must be positive and finite");
  }
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end())) {
    throw DomainError("breakpoints must be sorted");
  }
}

double IntegrationResult::achieved_tol() const {
  return value != 0.0 ? abs_error / std::abs(value) : abs_error;
}

IntegrationResult integrate_unchecked(const BatchIntegrand& f, Interval domain,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (std::isnan(domain.lo) || std::isnan(domain.hi) || std::isinf(domain.lo) ||
      !(domain.hi >= domain.lo)) {
    throw DomainError("integration domain must be [lo, hi] with finite lo <= hi");
  }
  if (domain.hi == domain.lo) return {0.0, 0.0, 0, true};

  const DomainMap map(domain, cfg);
  const double t_lo = map.t_of_x(domain.lo);
  const double t_hi = map.infinite() ? 1.0 : domain.hi;

  std::vector<double> edges{t_lo};
  for (double bp : cfg.breakpoints) {
    if (bp <= domain.lo || bp >= domain.hi) {
      throw DomainError("breakpoint outside the open integration domain");
    }
    const double t = map.t_of_x(bp);
    if (t > edges.back() && t < t_hi) edges.push_back(t);
  }
  edges.push_back(t_hi);

  PanelRule rule(f, map);
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) panels.push_back(rule.apply(edges[i], edges[i + 1]));

  auto worse = [&panels](std::size_t a, std::size_t b) { return panels[a].error < panels[b].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  double total = 0.0;
  double error = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.push(i);
    total += panels[i].value;
    error += panels[i].error;
    mass += panels[i].resabs;
  }

  auto target = [&] {
    return std::max({cfg.rel_tol * std::abs(total), cfg.abs_tol, 100.0 * kEps * mass});
  };

  bool converged = error <= target();
  while (!converged && static_cast<int>(panels.size()) < cfg.max_subdivisions) {
    const std::size_t worst = queue.top();
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    // Stop once the worst panel is too narrow for distinct nodes.
    const double width = p.hi - p.lo;
    if (width <= 64.0 * kEps * std::max(std::abs(p.lo), std::abs(p.hi)) || width < 1e-250) break;

    queue.pop();
    const Panel left = rule.apply(p.lo, mid);
    const Panel right = rule.apply(mid, p.hi);
    panels[worst] = left;
    panels.push_back(right);
    queue.push(worst);
    queue.push(panels.size() - 1);

    total += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    mass += left.resabs + right.resabs - p.resabs;
    converged = error <= target();
  }

  // Final sums in domain order so the result does not depend on running-sum drift.
  std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  IntegrationResult out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.abs_error += p.error;
  }
  out.subdivisions = static_cast<int>(panels.size());
  out.converged = converged;
  return out;
}

IntegrationResult integrate_batch(const BatchIntegrand& f, Interval domain,
                                  const QuadratureConfig& cfg) {
  IntegrationResult r = integrate_unchecked(f, domain, cfg);
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature did not converge after " << r.subdivisions
       << " panels (estimate " << r.value << ", error " << r.abs_error << ")";
    throw NumericalError(os.str(), r.value, r.achieved_tol());
  }
  return r;
}

double find_root_bracketed(const std::function<double(double)>& g, double lo, double hi,
                           double tol, int* iterations) {
  if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
  double a = lo;
  double b = hi;
  double fa = g(a);
  double fb = g(b);
  int iter = 0;
  auto done = [&](double x) {
    if (iterations) *iterations = iter;
    return x;
  };
  if (fa == 0.0) return done(a);
  if (fb == 0.0) return done(b);
  if (std::signbit(fa) == std::signbit(fb) || std::isnan(fa) || std::isnan(fb)) {
    std::ostringstream os;
    os << "root not bracketed: g(" << lo << ") = " << fa << ", g(" << hi << ") = " << fb;
    throw NumericalError(os.str(), std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::infinity());
  }

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  constexpr int kMaxIter = 300;
  for (iter = 1; iter <= kMaxIter; ++iter) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return done(b);

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = g(b);
  }
  throw NumericalError("root finder exceeded its iteration budget", b, std::abs(c - b));
}

}  // namespace casimir
