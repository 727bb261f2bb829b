#pragma once

#include <variant>

#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/potential.hpp"
#include "iondwell/quadrature.hpp"

namespace iondwell {

/// Builds the triangle approximation of a smooth barrier: same feet x1, x2
/// (hence the same width at the tunneling energy) and the apex above the true
/// maximum's abscissa. The apex height either preserves the barrier area
/// above E (default; the height may then exceed the true maximum) or is
/// pinned to the true maximum.
inline TriangleBarrier triangle_approximation(const PotentialModel& m, double f,
                                              const BarrierGeometry& g,
                                              const QuadratureOptions& opt = {}) {
  m.validate();
  if (m.coords != Coordinates::Parabolic)
    throw DomainError("triangle_approximation: defined for the parabolic barrier only");
  if (!(g.x1 < g.x_max && g.x_max < g.x2) || !(g.v_max > g.energy))
    throw DomainError("triangle_approximation: geometry has no valid turning points");

  PotentialModel smooth = m;
  smooth.triangle = false;

  TriangleBarrier tri;
  tri.x1 = g.x1;
  tri.x2 = g.x2;
  tri.x_apex = g.x_max;
  tri.energy = g.energy;
  if (m.apex_rule == TriangleApexRule::TrueMaximum) {
    tri.v_apex = g.v_max;
  } else {
    const double area = barrier_area(BoundPotential{smooth, f}, g.energy, g, opt);
    tri.v_apex = g.energy + 2.0 * area / g.width();
  }
  return tri;
}

/// A model bound to a field strength: either the smooth analytic curve or
/// its triangle overlay.
using BoundCurve = std::variant<BoundPotential, TriangleBarrier>;

inline double resolve_energy(const PotentialModel& m, double f) {
  return tunneling_energy(m.params, f, m.coords, m.energy_rule);
}

/// Binds a model at field f, solving the underlying smooth geometry first
/// when the triangle overlay is requested.
inline BoundCurve bind_model(const PotentialModel& m, double f) {
  m.validate();
  if (!(f > 0)) throw DomainError("bind_model: f must be > 0");
  if (!m.triangle) return BoundPotential{m, f};
  PotentialModel smooth = m;
  smooth.triangle = false;
  const double e = resolve_energy(m, f);
  const BarrierGeometry g = find_turning_points(smooth, f, e);
  return triangle_approximation(m, f, g);
}

inline double curve_value(const BoundCurve& c, double x) {
  return std::visit([x](const auto& k) { return k.value(x); }, c);
}

inline double curve_derivative(const BoundCurve& c, double x) {
  return std::visit([x](const auto& k) { return k.derivative(x); }, c);
}

} // namespace iondwell
