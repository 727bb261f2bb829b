#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "iondwell/errors.hpp"
#include "iondwell/potential.hpp"

namespace iondwell {

/// Classical geometry of one barrier: turning points where V(x) = E and the
/// interior maximum between them.
struct BarrierGeometry {
  double x1 = 0.0;     // inner turning point (bohr)
  double x2 = 0.0;     // outer turning point (bohr)
  double x_max = 0.0;  // abscissa of the barrier maximum (bohr)
  double v_max = 0.0;  // barrier maximum (hartree)
  double energy = 0.0; // tunneling energy E (hartree)
  double f = 0.0;      // field strength (a.u.)

  double width() const { return x2 - x1; }
  double height() const { return v_max - energy; }
};

struct ScanOptions {
  double x_lo = 1e-3;     // lower edge of the scan window (bohr)
  double x_hi = 0.0;      // upper edge; 0 = derive from the linear field term
  int samples = 4096;     // coarse logarithmic scan resolution
  double root_tol = 1e-12; // |V(x_i) - E| acceptance for refined roots (hartree)
};

/// Upper scan edge: the larger of 50 bohr and 4x the point where the linear
/// field term alone crosses the energy.
inline double default_scan_upper(Coordinates coords, double f, double e) {
  if (!(f > 0)) throw DomainError("default_scan_upper: f must be > 0");
  const double slope = coords == Coordinates::Parabolic ? f / 8.0 : f;
  const double x_lin = std::abs(e) / slope;
  return std::max(50.0, 4.0 * x_lin);
}

namespace detail {

// Log-spaced scan grid.
inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i)
    xs[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

// Bisects V(x) - e on a sign-change bracket [a, b] down to machine width.
// Residuals left at the turning points leak into the 1/k integrands of the
// barrier quadratures, so the roots are driven as deep as double precision
// allows; tol only bounds the residual accepted afterwards.
template <PotentialCurve C>
double bisect_root(const C& curve, double e, double a, double b, double fa, double tol) {
  for (int it = 0; it < 110; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break; // bracket at machine width
    const double fm = curve.value(m) - e;
    if ((fa <= 0) == (fm <= 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  const double root = 0.5 * (a + b);
  if (std::abs(curve.value(root) - e) > tol)
    throw ConvergenceError("bisect_root: residual above root tolerance");
  return root;
}

// Golden-section refinement of a maximum bracketed by [a, b].
template <PotentialCurve C>
double golden_max(const C& curve, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = curve.value(c);
  double fd = curve.value(d);
  while (b - a > 1e-13 * std::max(1.0, std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = curve.value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = curve.value(d);
    }
  }
  return 0.5 * (a + b);
}

} // namespace detail

/// Locates the turning points x1 < x2 of V(x) = e around the tunneling
/// barrier, by a coarse logarithmic scan followed by bisection, and refines
/// the interior maximum between them.
///
/// When several sign-change pairs exist (screened spherical curves develop a
/// polarization spike at small r), the pair bracketing the largest interior
/// value of V - e is taken.
///
/// Throws NoBarrierError when no complete barrier lies above e in the window
/// and NoExitPointError when an entrance crossing has no matching exit.
template <PotentialCurve C>
BarrierGeometry find_turning_points(const C& curve, double f, double e, const ScanOptions& opt) {
  if (!(opt.x_hi > opt.x_lo) || opt.samples < 8)
    throw DomainError("find_turning_points: invalid scan window");

  const std::vector<double> xs = detail::log_grid(opt.x_lo, opt.x_hi, opt.samples);
  std::vector<double> vs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) vs[i] = curve.value(xs[i]) - e;

  // Complete barriers: an up-crossing followed by the next down-crossing.
  struct Pair {
    size_t up, down;
    double interior_max;
    size_t arg_max;
  };
  std::vector<Pair> pairs;
  size_t pending_up = 0;
  bool have_up = false;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    const bool above = vs[i] > 0, above_next = vs[i + 1] > 0;
    if (!above && above_next) {
      pending_up = i;
      have_up = true;
    } else if (above && !above_next && have_up) {
      Pair p{pending_up, i, -1e300, pending_up + 1};
      for (size_t j = pending_up + 1; j <= i; ++j)
        if (vs[j] > p.interior_max) {
          p.interior_max = vs[j];
          p.arg_max = j;
        }
      pairs.push_back(p);
      have_up = false;
    }
  }
  if (pairs.empty()) {
    if (have_up)
      throw NoExitPointError("find_turning_points: scan window exhausted before the exit point at f = " +
                             std::to_string(f));
    throw NoBarrierError("find_turning_points: no barrier above E at f = " + std::to_string(f));
  }

  const Pair& best = *std::max_element(
      pairs.begin(), pairs.end(),
      [](const Pair& a, const Pair& b) { return a.interior_max < b.interior_max; });

  BarrierGeometry g;
  g.energy = e;
  g.f = f;
  g.x1 = detail::bisect_root(curve, e, xs[best.up], xs[best.up + 1], vs[best.up], opt.root_tol);
  g.x2 = detail::bisect_root(curve, e, xs[best.down], xs[best.down + 1], vs[best.down], opt.root_tol);

  const size_t im = best.arg_max;
  const double a = xs[im > 0 ? im - 1 : im];
  const double b = xs[std::min(im + 1, xs.size() - 1)];
  g.x_max = detail::golden_max(curve, std::max(a, g.x1), std::min(b, g.x2));
  g.v_max = curve.value(g.x_max);
  if (!(g.v_max > e))
    throw NoBarrierError("find_turning_points: refined maximum fell below E at f = " + std::to_string(f));
  return g;
}

/// Locates the interior barrier maximum without reference to an energy.
/// Throws NoBarrierError when the window holds no interior local maximum.
template <PotentialCurve C>
std::pair<double, double> barrier_maximum(const C& curve, const ScanOptions& opt) {
  if (!(opt.x_hi > opt.x_lo) || opt.samples < 8)
    throw DomainError("barrier_maximum: invalid scan window");
  const std::vector<double> xs = detail::log_grid(opt.x_lo, opt.x_hi, opt.samples);
  std::vector<double> vs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) vs[i] = curve.value(xs[i]);

  // Highest interior local maximum; window-edge maxima do not count.
  bool found = false;
  size_t arg = 0;
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && (!found || vs[i] > vs[arg])) {
      arg = i;
      found = true;
    }
  }
  if (!found) throw NoBarrierError("barrier_maximum: no interior maximum in the scan window");
  const double x_max = detail::golden_max(curve, xs[arg - 1], xs[arg + 1]);
  return {x_max, curve.value(x_max)};
}

// Model-level conveniences (smooth models; triangle overlays carry their own
// geometry by construction).

inline ScanOptions default_scan_options(const PotentialModel& m, double f, double e) {
  ScanOptions opt;
  opt.x_hi = default_scan_upper(m.coords, f, e);
  return opt;
}

inline BarrierGeometry find_turning_points(const PotentialModel& m, double f, double e) {
  m.validate();
  if (m.triangle)
    throw DomainError("find_turning_points: bind the triangle overlay first (triangle_approximation)");
  if (!(f > 0)) throw DomainError("find_turning_points: f must be > 0");
  return find_turning_points(BoundPotential{m, f}, f, e, default_scan_options(m, f, e));
}

inline std::pair<double, double> barrier_maximum(const PotentialModel& m, double f) {
  m.validate();
  if (!(f > 0)) throw DomainError("barrier_maximum: f must be > 0");
  const double e = tunneling_energy(m.params, f, m.coords, m.energy_rule);
  return barrier_maximum(BoundPotential{m, f}, default_scan_options(m, f, e));
}

} // namespace iondwell
