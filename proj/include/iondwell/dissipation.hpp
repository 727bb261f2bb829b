#pragma once

#include <cmath>
#include <optional>

#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/potential.hpp"
#include "iondwell/quadrature.hpp"
#include "iondwell/times.hpp"

namespace iondwell {

/// How the frictional energy loss enters the effective potential.
enum class FrictionMode {
  TotalShift, // constant shift by the full loss (fixed x1 -> x2 limits)
  Cumulative  // running loss gamma * A(x) accumulated up to x
};

struct FrictionSpec {
  double gamma = 0.0; // dimensionless; > 0 loses energy, < 0 gains
  FrictionMode mode = FrictionMode::TotalShift;

  void validate() const {
    if (!(std::abs(gamma) < 1.0))
      throw DomainError("FrictionSpec: |gamma| must be < 1");
  }
};

/// Energy lost (gained, for gamma < 0) while traversing the barrier,
/// Delta E = gamma * integral of v over [x1, x2] with v = k in a.u.,
/// evaluated with the unperturbed k (first order in gamma).
template <PotentialCurve C>
double dissipated_energy(const C& curve, double e, const BarrierGeometry& g, double gamma,
                         const QuadratureOptions& opt = {}) {
  if (gamma == 0.0) return 0.0;
  return gamma * wkb_integrals(curve, e, g, opt).action;
}

/// The friction-corrected potential. In total-shift mode V_eff = V + Delta E;
/// in cumulative mode V_eff(x) = V(x) + gamma * A(x) with the running
/// unperturbed action A clamped to [0, A_total] outside the original barrier.
template <PotentialCurve C>
class EffectiveCurve {
 public:
  EffectiveCurve(C base, double e_ref, double gamma, double delta_e)
      : base_(std::move(base)), e_ref_(e_ref), gamma_(gamma), delta_e_(delta_e) {}

  EffectiveCurve(C base, double e_ref, double gamma, double delta_e, ActionTable table)
      : base_(std::move(base)), e_ref_(e_ref), gamma_(gamma), delta_e_(delta_e),
        table_(std::move(table)) {}

  double value(double x) const {
    if (!table_) return base_.value(x) + delta_e_;
    return base_.value(x) + gamma_ * table_->at(x);
  }

  double derivative(double x) const {
    double d = base_.derivative(x);
    if (table_ && x > table_->x1() && x < table_->x2()) {
      const double dv = base_.value(x) - e_ref_;
      d += gamma_ * (dv > 0 ? std::sqrt(2.0 * dv) : 0.0); // dA/dx = k(x)
    }
    return d;
  }

  const C& base() const { return base_; }
  double delta_e() const { return delta_e_; }

 private:
  C base_;
  double e_ref_;
  double gamma_;
  double delta_e_;
  std::optional<ActionTable> table_;
};

/// Re-solved geometry plus the effective potential it lives on. k_eff is
/// wkb_k(barrier.curve, e, x).
template <PotentialCurve C>
struct EffectiveBarrier {
  BarrierGeometry geometry;
  EffectiveCurve<C> curve;
  double delta_e = 0.0;
};

/// Builds the effective barrier for friction coefficient gamma: computes the
/// unperturbed loss, shifts the potential per the accumulation mode and
/// re-solves the turning points on V_eff. Throws NoBarrierError when an
/// energy gain (gamma < 0) lifts the electron above the barrier maximum.
template <PotentialCurve C>
EffectiveBarrier<C> effective_geometry_and_k(const C& curve, double f, double e,
                                             const BarrierGeometry& g0, const FrictionSpec& spec,
                                             const ScanOptions& scan,
                                             const QuadratureOptions& opt = {}) {
  spec.validate();
  const double s_total = wkb_integrals(curve, e, g0, opt).action;
  const double delta_e = spec.gamma * s_total;

  EffectiveCurve<C> eff =
      spec.mode == FrictionMode::TotalShift
          ? EffectiveCurve<C>(curve, e, spec.gamma, delta_e)
          : EffectiveCurve<C>(curve, e, spec.gamma, delta_e, ActionTable::build(curve, e, g0));

  const BarrierGeometry g_eff = find_turning_points(eff, f, e, scan);
  return EffectiveBarrier<C>{g_eff, std::move(eff), delta_e};
}

/// Full dissipative evaluation: dwell, traversal, transmission and the
/// conditional dwell times over the effective barrier.
template <PotentialCurve C>
TimeResult dissipative_dwell_time(const C& curve, double f, double e, const BarrierGeometry& g0,
                                  const FrictionSpec& spec, const ScanOptions& scan,
                                  const QuadratureOptions& opt = {}) {
  EffectiveBarrier<C> eb = effective_geometry_and_k(curve, f, e, g0, spec, scan, opt);
  TimeResult r = evaluate_times(eb.curve, e, eb.geometry, opt);
  r.gamma = spec.gamma;
  r.delta_e = eb.delta_e;
  return r;
}

// Model-level conveniences. The scan window accounts for the shifted outer
// turning point by searching down to the post-loss energy level.

inline ScanOptions dissipative_scan_options(const PotentialModel& m, double f, double e,
                                            double delta_e) {
  ScanOptions scan;
  scan.x_hi = default_scan_upper(m.coords, f, std::min(e, e - delta_e));
  return scan;
}

inline TimeResult dissipative_dwell_time(const PotentialModel& m, double f, double e,
                                         const FrictionSpec& spec,
                                         const QuadratureOptions& opt = {}) {
  m.validate();
  if (m.triangle)
    throw DomainError("dissipative_dwell_time: bind the triangle overlay explicitly");
  const BoundPotential curve{m, f};
  const BarrierGeometry g0 = find_turning_points(m, f, e);
  const double delta_e = dissipated_energy(curve, e, g0, spec.gamma, opt);
  return dissipative_dwell_time(curve, f, e, g0, spec,
                                dissipative_scan_options(m, f, e, delta_e), opt);
}

} // namespace iondwell
