#pragma once

#include <cmath>
#include <concepts>

#include "iondwell/atom.hpp"
#include "iondwell/errors.hpp"

namespace iondwell {

/// Anything evaluable as a 1-D potential curve V(x) with a derivative,
/// both in atomic units. The derivative is needed for the integrable
/// endpoint limits of the barrier quadratures.
template <typename C>
concept PotentialCurve = requires(const C& c, double x) {
  { c.value(x) } -> std::convertible_to<double>;
  { c.derivative(x) } -> std::convertible_to<double>;
};

/// How the apex of the triangle approximation is fixed. The feet and the
/// apex abscissa always come from the true barrier; only the height is free.
enum class TriangleApexRule {
  MatchArea,  // triangle area above E equals the true barrier's area above E
  TrueMaximum // apex height equals the true barrier maximum
};

// ---------------------------------------------------------------------------
// Potential forms
// ---------------------------------------------------------------------------

// Spherical Field-Direction model: the field is anti-parallel to r
// (theta = 180 deg), so F.r = -F r and the 1-D radial potential becomes
//   V(r) = -(Z-1)/r + alpha_i F / r^2 - F r
// with the electron-screening correction
//   -(1/r)(1 + r/(2 r0)) exp(-r/r0)
// restoring the full nuclear charge at the origin.

inline double v_spherical(const AtomParams& p, double f, double r, bool screening) {
  if (!(r > 0)) throw DomainError("v_spherical: r must be > 0");
  double v = -(p.z - 1) / r + p.alpha_i * f / (r * r) - f * r;
  if (screening) v -= (1.0 / r + 1.0 / (2.0 * p.r0)) * std::exp(-r / p.r0);
  return v;
}

inline double v_spherical_derivative(const AtomParams& p, double f, double r, bool screening) {
  if (!(r > 0)) throw DomainError("v_spherical_derivative: r must be > 0");
  double d = (p.z - 1) / (r * r) - 2.0 * p.alpha_i * f / (r * r * r) - f;
  if (screening) {
    d += std::exp(-r / p.r0) *
         (1.0 / (r * r) + (1.0 / r + 1.0 / (2.0 * p.r0)) / p.r0);
  }
  return d;
}

// Effective 1-D potential of the parabolic eta equation,
//   V(eta) = -beta2/(2 eta) + (m^2-1)/(8 eta^2) - F eta/8
//            + (alpha_i F / eta^2) exp(-3/eta),
// where the exponential factor regularizes the ion-polarization term at
// small eta (the pure dipole form is a far-field expression). Screening adds
//   -(1/eta + 1/(4 r0)) exp(-eta/(2 r0)).

inline double v_parabolic(const AtomParams& p, double f, double eta, bool screening) {
  if (!(eta > 0)) throw DomainError("v_parabolic: eta must be > 0");
  const double b2 = separation_constants(p, f).second;
  const double m2 = static_cast<double>(p.m) * p.m;
  double v = -b2 / (2.0 * eta) + (m2 - 1.0) / (8.0 * eta * eta) - f * eta / 8.0 +
             p.alpha_i * f / (eta * eta) * std::exp(-3.0 / eta);
  if (screening) v -= (1.0 / eta + 1.0 / (4.0 * p.r0)) * std::exp(-eta / (2.0 * p.r0));
  return v;
}

inline double v_parabolic_derivative(const AtomParams& p, double f, double eta, bool screening) {
  if (!(eta > 0)) throw DomainError("v_parabolic_derivative: eta must be > 0");
  const double b2 = separation_constants(p, f).second;
  const double m2 = static_cast<double>(p.m) * p.m;
  const double e2 = eta * eta;
  double d = b2 / (2.0 * e2) - (m2 - 1.0) / (4.0 * e2 * eta) - f / 8.0 +
             p.alpha_i * f * std::exp(-3.0 / eta) * (3.0 / (e2 * e2) - 2.0 / (e2 * eta));
  if (screening) {
    d += std::exp(-eta / (2.0 * p.r0)) *
         (1.0 / e2 + (1.0 / eta + 1.0 / (4.0 * p.r0)) / (2.0 * p.r0));
  }
  return d;
}

/// The screening correction alone (the screened-minus-unscreened difference).
inline double screening_term(const AtomParams& p, Coordinates coords, double x) {
  if (!(x > 0)) throw DomainError("screening_term: x must be > 0");
  if (coords == Coordinates::SphericalFieldDirection)
    return -(1.0 / x + 1.0 / (2.0 * p.r0)) * std::exp(-x / p.r0);
  return -(1.0 / x + 1.0 / (4.0 * p.r0)) * std::exp(-x / (2.0 * p.r0));
}

// ---------------------------------------------------------------------------
// Model descriptor and bound curves
// ---------------------------------------------------------------------------

/// Descriptor of one 1-D potential curve family, evaluable once bound to a
/// field strength. Triangle overlays are only defined for the parabolic
/// barrier.
struct PotentialModel {
  Coordinates coords = Coordinates::Parabolic;
  bool screening = false;
  bool triangle = false;
  TriangleApexRule apex_rule = TriangleApexRule::MatchArea;
  SphericalEnergyRule energy_rule = SphericalEnergyRule::FullBinding;
  AtomParams params{};

  void validate() const {
    params.validate();
    if (triangle && coords != Coordinates::Parabolic)
      throw DomainError("PotentialModel: triangle approximation is defined for parabolic coordinates only");
    if (coords == Coordinates::SphericalFieldDirection && screening && params.z - 1 != 1)
      throw DomainError("PotentialModel: screened spherical form assumes Z - 1 = 1");
  }
};

/// A smooth analytic model evaluated at a fixed field strength.
struct BoundPotential {
  PotentialModel model;
  double f = 0.0;

  double value(double x) const {
    return model.coords == Coordinates::Parabolic
               ? v_parabolic(model.params, f, x, model.screening)
               : v_spherical(model.params, f, x, model.screening);
  }
  double derivative(double x) const {
    return model.coords == Coordinates::Parabolic
               ? v_parabolic_derivative(model.params, f, x, model.screening)
               : v_spherical_derivative(model.params, f, x, model.screening);
  }
};

/// Piecewise-linear barrier: rises from `energy` at x1 to the apex, falls
/// back to `energy` at x2, and continues linearly outside the feet.
struct TriangleBarrier {
  double x1 = 0.0;
  double x2 = 0.0;
  double x_apex = 0.0;
  double v_apex = 0.0;
  double energy = 0.0;

  double value(double x) const {
    if (x <= x_apex)
      return energy + (v_apex - energy) * (x - x1) / (x_apex - x1);
    return energy + (v_apex - energy) * (x2 - x) / (x2 - x_apex);
  }
  double derivative(double x) const {
    if (x <= x_apex) return (v_apex - energy) / (x_apex - x1);
    return -(v_apex - energy) / (x2 - x_apex);
  }
};

static_assert(PotentialCurve<BoundPotential>);
static_assert(PotentialCurve<TriangleBarrier>);

} // namespace iondwell
