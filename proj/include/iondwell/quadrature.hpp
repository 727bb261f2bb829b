#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/potential.hpp"

namespace iondwell {

struct QuadratureOptions {
  double rel_tol = 1e-8;   // doubling stops once all integrals move less than this
  int initial_panels = 512;
  int max_panels = 1 << 20;
};

/// The three barrier integrals every time functional is built from.
struct WkbIntegrals {
  double dwell = 0.0;     // integral dx/k(x) exp(-2 A(x)) over [x1, x2]
  double traversal = 0.0; // integral dx/k(x)
  double action = 0.0;    // A(x2) = integral k(x) dx
  int panels = 0;         // panel count at convergence
};

/// Imaginary-momentum magnitude under the barrier, k = sqrt(2 (V(x) - E))
/// in atomic units. Values below E are rejected, except for round-off-sized
/// residuals at the turning points, which count as zero.
template <PotentialCurve C>
double wkb_k(const C& curve, double e, double x) {
  const double d = curve.value(x) - e;
  if (d < 0) {
    if (d > -1e-12) return 0.0;
    throw DomainError("wkb_k: V(x) < E (outside the barrier)");
  }
  return std::sqrt(2.0 * d);
}

namespace detail {

// All barrier integrals share the substitution x = x1 + (x2-x1) sin^2(t),
// t in [0, pi/2]. It clusters nodes at both turning points (cosine spacing)
// and absorbs the 1/k endpoint singularities: dx/k stays bounded because
// k ~ sqrt(|x - xi|) there. k is clamped at 0 to tolerate the root residual
// of the turning points.

// k at a turning point is below this once the root is converged; a barrier
// evaluated away from its turning points (piecewise-constant test curves)
// is far above it.
inline constexpr double k_turning_eps = 1e-4;

template <PotentialCurve C>
inline double clamped_k(const C& curve, double e, double x) {
  const double d = curve.value(x) - e;
  return d > 0 ? std::sqrt(2.0 * d) : 0.0;
}

// One fixed-resolution pass with n panels (n even).
template <PotentialCurve C>
WkbIntegrals wkb_pass(const C& curve, double e, const BarrierGeometry& g, int n) {
  const double w = g.width();
  const double h = std::numbers::pi / 2.0 / n;

  std::vector<double> knode(static_cast<size_t>(n) + 1);
  std::vector<double> xprime(static_cast<size_t>(n) + 1);
  std::vector<double> action(static_cast<size_t>(n) + 1);

  for (int j = 0; j <= n; ++j) {
    const double t = j * h;
    const double s = std::sin(t);
    knode[static_cast<size_t>(j)] = clamped_k(curve, e, g.x1 + w * s * s);
    xprime[static_cast<size_t>(j)] = w * std::sin(2.0 * t);
  }

  // Cumulative action by per-step Simpson; the integrand k(x(t)) x'(t)
  // vanishes like t^2 at both ends and is smooth in between.
  action[0] = 0.0;
  for (int j = 0; j < n; ++j) {
    const double tm = (j + 0.5) * h;
    const double sm = std::sin(tm);
    const double km = clamped_k(curve, e, g.x1 + w * sm * sm);
    const double phim = km * w * std::sin(2.0 * tm);
    const double phi0 = knode[static_cast<size_t>(j)] * xprime[static_cast<size_t>(j)];
    const double phi1 = knode[static_cast<size_t>(j) + 1] * xprime[static_cast<size_t>(j) + 1];
    action[static_cast<size_t>(j) + 1] = action[static_cast<size_t>(j)] + h / 6.0 * (phi0 + 4.0 * phim + phi1);
  }

  // x'(t)/k(x(t)) tends to sqrt(2 w / |V'(xi)|) at a turning point.
  const double lim1 = std::sqrt(2.0 * w / std::abs(curve.derivative(g.x1)));
  const double lim2 = std::sqrt(2.0 * w / std::abs(curve.derivative(g.x2)));

  std::vector<double> psi(static_cast<size_t>(n) + 1);  // dwell integrand
  std::vector<double> chi(static_cast<size_t>(n) + 1);  // traversal integrand
  for (int j = 0; j <= n; ++j) {
    const size_t sj = static_cast<size_t>(j);
    const double damp = std::exp(-2.0 * action[sj]);
    if ((j == 0 || j == n) && knode[sj] <= k_turning_eps) {
      const double lim = j == 0 ? lim1 : lim2;
      chi[sj] = lim;
      psi[sj] = lim * damp;
    } else if (knode[sj] > 0.0) {
      chi[sj] = xprime[sj] / knode[sj];
      psi[sj] = chi[sj] * damp;
    } else {
      // clamped interior node; fall back to the nearest endpoint limit
      const double lim = j * 2 < n ? lim1 : lim2;
      chi[sj] = lim;
      psi[sj] = lim * damp;
    }
  }

  auto simpson = [h, n](const std::vector<double>& y) {
    double odd = 0.0, even = 0.0;
    for (int j = 1; j < n; j += 2) odd += y[static_cast<size_t>(j)];
    for (int j = 2; j < n; j += 2) even += y[static_cast<size_t>(j)];
    return h / 3.0 * (y[0] + y[static_cast<size_t>(n)] + 4.0 * odd + 2.0 * even);
  };

  WkbIntegrals r;
  r.dwell = simpson(psi);
  r.traversal = simpson(chi);
  r.action = action[static_cast<size_t>(n)];
  r.panels = n;
  return r;
}

inline bool within_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace detail

/// Evaluates the barrier integrals, doubling the grid until dwell, traversal
/// and action all move by less than rel_tol. Throws ConvergenceError when the
/// panel cap is reached first.
template <PotentialCurve C>
WkbIntegrals wkb_integrals(const C& curve, double e, const BarrierGeometry& g,
                           const QuadratureOptions& opt = {}) {
  if (!(g.x2 > g.x1)) throw DomainError("wkb_integrals: geometry has x2 <= x1");
  int n = std::max(4, opt.initial_panels);
  if (n % 2) ++n;
  WkbIntegrals prev = detail::wkb_pass(curve, e, g, n);
  while (n <= opt.max_panels / 2) {
    n *= 2;
    const WkbIntegrals next = detail::wkb_pass(curve, e, g, n);
    if (detail::within_rel(prev.dwell, next.dwell, opt.rel_tol) &&
        detail::within_rel(prev.traversal, next.traversal, opt.rel_tol) &&
        detail::within_rel(prev.action, next.action, opt.rel_tol))
      return next;
    prev = next;
  }
  char msg[128];
  std::snprintf(msg, sizeof msg, "wkb_integrals: not converged to rel_tol = %g within %d panels",
                opt.rel_tol, opt.max_panels);
  throw ConvergenceError(msg);
}

/// Area of the barrier above the energy, integral of (V(x) - E) over
/// [x1, x2], on the same graded grid.
template <PotentialCurve C>
double barrier_area(const C& curve, double e, const BarrierGeometry& g,
                    const QuadratureOptions& opt = {}) {
  const double w = g.width();
  auto pass = [&](int n) {
    const double h = std::numbers::pi / 2.0 / n;
    double odd = 0.0, even = 0.0;
    auto integrand = [&](double t) {
      const double s = std::sin(t);
      const double v = curve.value(g.x1 + w * s * s) - e;
      return (v > 0 ? v : 0.0) * w * std::sin(2.0 * t);
    };
    for (int j = 1; j < n; j += 2) odd += integrand(j * h);
    for (int j = 2; j < n; j += 2) even += integrand(j * h);
    return h / 3.0 * (integrand(0.0) + integrand(n * h) + 4.0 * odd + 2.0 * even);
  };
  int n = std::max(4, opt.initial_panels);
  if (n % 2) ++n;
  double prev = pass(n);
  while (n <= opt.max_panels / 2) {
    n *= 2;
    const double next = pass(n);
    if (detail::within_rel(prev, next, opt.rel_tol)) return next;
    prev = next;
  }
  throw ConvergenceError("barrier_area: not converged within the panel cap");
}

/// Cumulative WKB action A(x) = integral of k from x1 to x, tabulated on the
/// graded grid and interpolated monotonically (Fritsch-Carlson cubic).
/// Outside [x1, x2] the table clamps to 0 and to the total action.
class ActionTable {
 public:
  template <PotentialCurve C>
  static ActionTable build(const C& curve, double e, const BarrierGeometry& g, int panels = 4096) {
    ActionTable t;
    const double w = g.width();
    const int n = panels;
    const double h = std::numbers::pi / 2.0 / n;
    t.x_.resize(static_cast<size_t>(n) + 1);
    t.a_.resize(static_cast<size_t>(n) + 1);
    std::vector<double> phi(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      const double tt = j * h;
      const double s = std::sin(tt);
      const double x = g.x1 + w * s * s;
      t.x_[static_cast<size_t>(j)] = x;
      phi[static_cast<size_t>(j)] = detail::clamped_k(curve, e, x) * w * std::sin(2.0 * tt);
    }
    t.x_.front() = g.x1;
    t.x_.back() = g.x2;
    t.a_[0] = 0.0;
    for (int j = 0; j < n; ++j) {
      const double tm = (j + 0.5) * h;
      const double sm = std::sin(tm);
      const double km = detail::clamped_k(curve, e, g.x1 + w * sm * sm);
      t.a_[static_cast<size_t>(j) + 1] =
          t.a_[static_cast<size_t>(j)] +
          h / 6.0 * (phi[static_cast<size_t>(j)] + 4.0 * km * w * std::sin(2.0 * tm) + phi[static_cast<size_t>(j) + 1]);
    }
    t.build_slopes();
    return t;
  }

  double total() const { return a_.back(); }
  double x1() const { return x_.front(); }
  double x2() const { return x_.back(); }

  double at(double x) const {
    if (x <= x_.front()) return 0.0;
    if (x >= x_.back()) return a_.back();
    size_t hi = static_cast<size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    const size_t lo = hi - 1;
    const double hstep = x_[hi] - x_[lo];
    const double u = (x - x_[lo]) / hstep;
    const double a0 = a_[lo], a1 = a_[hi];
    const double m0 = d_[lo] * hstep, m1 = d_[hi] * hstep;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * a0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * a1 + (u3 - u2) * m1;
  }

 private:
  void build_slopes() {
    const size_t n = x_.size();
    d_.assign(n, 0.0);
    std::vector<double> sec(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) sec[i] = (a_[i + 1] - a_[i]) / (x_[i + 1] - x_[i]);
    d_[0] = sec.front();
    d_[n - 1] = sec.back();
    for (size_t i = 1; i + 1 < n; ++i) {
      if (sec[i - 1] <= 0.0 || sec[i] <= 0.0) {
        d_[i] = 0.0;
        continue;
      }
      const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
      d_[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
    }
  }

  std::vector<double> x_, a_, d_;
};

} // namespace iondwell
