#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "iondwell/errors.hpp"

namespace iondwell {

/// Coordinate system of the effective 1-D tunneling equation.
enum class Coordinates {
  SphericalFieldDirection, // radial problem along theta = 180 deg
  Parabolic                // eta equation after the xi << eta reduction
};

/// Energy assigned to the tunneling electron in the radial problem.
/// The parabolic eta equation fixes E = -I_p(F)/4; the radial problem has no
/// equally canonical choice, so both conventions are selectable.
enum class SphericalEnergyRule {
  FullBinding,   // E = -I_p(F)
  QuarterBinding // E = -I_p(F)/4
};

/// Atomic/ionic constants of the target, in Hartree atomic units.
struct AtomParams {
  int z = 2;                 // nuclear charge
  double ip0 = 0.904;        // zero-field ionization energy (hartree)
  double alpha_n = 1.38;     // static polarizability of the atom (a.u.)
  double alpha_i = 9.0 / 32; // static polarizability of the ion (a.u.)
  int m = 0;                 // magnetic quantum number
  double r0 = 0.25;          // screening radius (bohr), a0/(2Z) for helium

  void validate() const {
    if (z < 1) throw DomainError("AtomParams: z must be >= 1");
    if (!(ip0 > 0)) throw DomainError("AtomParams: ip0 must be > 0");
    if (!(r0 > 0)) throw DomainError("AtomParams: r0 must be > 0");
  }
};

/// The default 4He target.
inline AtomParams helium() { return AtomParams{}; }

/// Looks up a built-in parameter set by name ("he4").
inline std::optional<AtomParams> named_atom(std::string_view name) {
  if (name == "he4") return helium();
  return std::nullopt;
}

/// Field-dependent ionization energy
/// I_p(F) = I_p(0) + (alpha_n - alpha_i) F^2 / 2.
inline double ionization_energy(const AtomParams& p, double f) {
  return p.ip0 + 0.5 * (p.alpha_n - p.alpha_i) * f * f;
}

/// Separation constants of the parabolic-coordinate equations,
/// beta1 = (1+|m|) sqrt(2 I_p(F)) / 2 and beta2 = 1 - beta1.
inline std::pair<double, double> separation_constants(const AtomParams& p, double f) {
  const double b1 = (1 + std::abs(p.m)) * std::sqrt(2.0 * ionization_energy(p, f)) / 2.0;
  return {b1, 1.0 - b1};
}

/// Energy of the tunneling electron for the selected coordinate system.
/// Parabolic: E = -I_p(F)/4 (the eta equation's eigenvalue).
/// Spherical: selectable, default E = -I_p(F).
inline double tunneling_energy(const AtomParams& p, double f, Coordinates coords,
                               SphericalEnergyRule rule = SphericalEnergyRule::FullBinding) {
  const double ip = ionization_energy(p, f);
  if (coords == Coordinates::Parabolic) return -ip / 4.0;
  return rule == SphericalEnergyRule::FullBinding ? -ip : -ip / 4.0;
}

} // namespace iondwell
