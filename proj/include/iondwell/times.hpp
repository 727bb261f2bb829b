#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/potential.hpp"
#include "iondwell/quadrature.hpp"

namespace iondwell {

/// Everything computed for one (model, field, friction) evaluation.
/// All times in a.u. of time; conversion to attoseconds is left to the
/// presentation layer.
struct TimeResult {
  double tau_d = 0.0;         // average dwell time
  double tau_traversal = 0.0; // semiclassical traversal time
  double t2 = 0.0;            // transmission probability |T|^2
  double tau_dt = 0.0;        // transmission dwell time, tau_d / |T|^2
  double tau_dr = 0.0;        // reflection dwell time, tau_d / |R|^2; +inf when |T|^2 = 1
  double gamma = 0.0;         // friction coefficient used
  double delta_e = 0.0;       // total dissipated energy (hartree)
  BarrierGeometry geometry{}; // geometry actually used (post-dissipation when gamma != 0)

  /// True when |T|^2 = 1 left nothing to reflect and tau_dr is the infinity marker.
  bool no_reflection() const { return std::isinf(tau_dr); }
};

/// Conditional dwell times for transmitted and reflected particles,
/// tau_dt = tau_d / |T|^2 and tau_dr = tau_d / (1 - |T|^2). The reciprocal
/// identity 1/tau_d = 1/tau_dt + 1/tau_dr holds by construction; a
/// transparent barrier (t2 = 1) yields an infinite reflection dwell time.
inline std::pair<double, double> split_dwell_times(double tau_d, double t2) {
  if (!(tau_d > 0)) throw DomainError("split_dwell_times: tau_d must be > 0");
  if (!(t2 > 0) || t2 > 1) throw DomainError("split_dwell_times: |T|^2 must lie in (0, 1]");
  const double tau_dt = tau_d / t2;
  const double tau_dr = t2 < 1 ? tau_d / (1.0 - t2) : std::numeric_limits<double>::infinity();
  return {tau_dt, tau_dr};
}

/// Average dwell time, tau_D = integral dx/k(x) exp(-2 A(x)) over the barrier.
template <PotentialCurve C>
double dwell_time(const C& curve, double e, const BarrierGeometry& g,
                  const QuadratureOptions& opt = {}) {
  return wkb_integrals(curve, e, g, opt).dwell;
}

/// Traversal time, integral dx/v(x) with the semiclassical speed v = k.
template <PotentialCurve C>
double traversal_time(const C& curve, double e, const BarrierGeometry& g,
                      const QuadratureOptions& opt = {}) {
  return wkb_integrals(curve, e, g, opt).traversal;
}

/// JWKB transmission probability, |T|^2 = exp(-2 integral k dx).
template <PotentialCurve C>
double transmission(const C& curve, double e, const BarrierGeometry& g,
                    const QuadratureOptions& opt = {}) {
  return std::exp(-2.0 * wkb_integrals(curve, e, g, opt).action);
}

/// Bundles the full non-dissipative evaluation for one barrier.
template <PotentialCurve C>
TimeResult evaluate_times(const C& curve, double e, const BarrierGeometry& g,
                          const QuadratureOptions& opt = {}) {
  const WkbIntegrals integrals = wkb_integrals(curve, e, g, opt);
  TimeResult r;
  r.tau_d = integrals.dwell;
  r.tau_traversal = integrals.traversal;
  r.t2 = std::exp(-2.0 * integrals.action);
  std::tie(r.tau_dt, r.tau_dr) = split_dwell_times(r.tau_d, r.t2);
  r.geometry = g;
  return r;
}

// Model-level conveniences.

inline double wkb_k(const PotentialModel& m, double f, double e, double x) {
  return wkb_k(BoundPotential{m, f}, e, x);
}

inline double dwell_time(const PotentialModel& m, double f, double e, const BarrierGeometry& g,
                         const QuadratureOptions& opt = {}) {
  return dwell_time(BoundPotential{m, f}, e, g, opt);
}

inline double traversal_time(const PotentialModel& m, double f, double e, const BarrierGeometry& g,
                             const QuadratureOptions& opt = {}) {
  return traversal_time(BoundPotential{m, f}, e, g, opt);
}

inline double transmission(const PotentialModel& m, double f, double e, const BarrierGeometry& g,
                           const QuadratureOptions& opt = {}) {
  return transmission(BoundPotential{m, f}, e, g, opt);
}

} // namespace iondwell
