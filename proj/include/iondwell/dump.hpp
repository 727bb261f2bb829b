#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/potential.hpp"
#include "iondwell/table_io.hpp"
#include "iondwell/triangle.hpp"

namespace iondwell {

/// Options for the plot-ready potential dump.
struct PotentialDumpOptions {
  double x_min = 0.5;  // bohr
  double x_max = 40.0; // bohr
  int samples = 800;
  bool log_spacing = false;
  std::string separator = "\t";
  bool terms = false;             // per-term decomposition columns
  bool compare_screening = false; // emit both unscreened and screened totals
  bool triangle = false;          // triangle-approximation column(s)
};

namespace detail {

inline std::vector<double> dump_grid(const PotentialDumpOptions& o) {
  if (!(o.x_min > 0) || !(o.x_max >= o.x_min) || o.samples < 1)
    throw DomainError("dump_potential: invalid sample grid");
  std::vector<double> xs;
  if (o.samples == 1) {
    xs.push_back(o.x_min);
    return xs;
  }
  xs.reserve(static_cast<size_t>(o.samples));
  for (int i = 0; i < o.samples; ++i) {
    const double u = static_cast<double>(i) / (o.samples - 1);
    xs.push_back(o.log_spacing ? o.x_min * std::pow(o.x_max / o.x_min, u)
                               : o.x_min + (o.x_max - o.x_min) * u);
  }
  return xs;
}

} // namespace detail

/// Writes (x, V) columns for the selected variants of one model at field f:
/// the total curve, optionally both screening variants, the per-term
/// decomposition (with the polarization term in both its bare and
/// exponentially regularized forms), and the triangle overlay.
inline void dump_potential(const PotentialModel& m, double f, const PotentialDumpOptions& o,
                           std::ostream& os) {
  m.validate();
  if (!(f > 0)) throw DomainError("dump_potential: f must be > 0");
  const std::string& sep = o.separator;
  const AtomParams& p = m.params;
  const bool parabolic = m.coords == Coordinates::Parabolic;
  const double e = resolve_energy(m, f);

  std::vector<std::string> cols{"x"};
  if (o.compare_screening) {
    cols.push_back("v_unscreened");
    cols.push_back("v_screened");
  } else {
    cols.push_back("v_total");
  }
  if (o.terms) {
    if (parabolic) {
      cols.insert(cols.end(), {"v_coulomb", "v_centrifugal", "v_field", "v_pol", "v_pol_bare"});
    } else {
      cols.insert(cols.end(), {"v_coulomb", "v_pol", "v_field"});
    }
    if (m.screening || o.compare_screening) cols.push_back("v_screening_term");
  }

  std::vector<TriangleBarrier> tris;
  if (o.triangle) {
    PotentialModel base = m;
    base.triangle = true;
    if (o.compare_screening) {
      base.screening = false;
      tris.push_back(std::get<TriangleBarrier>(bind_model(base, f)));
      base.screening = true;
      tris.push_back(std::get<TriangleBarrier>(bind_model(base, f)));
      cols.push_back("tri_unscreened");
      cols.push_back("tri_screened");
    } else {
      tris.push_back(std::get<TriangleBarrier>(bind_model(base, f)));
      cols.push_back("tri");
    }
  }

  os << "# " << kVersionString << " potential\n";
  os << "# coords = " << to_string(m.coords) << "\n";
  os << "# screening = " << (m.screening ? "true" : "false") << "\n";
  os << "# f = " << fmt17(f) << "\n";
  os << "# energy = " << fmt17(e) << "\n";
  os << "# columns:";
  for (const std::string& c : cols) os << " " << c;
  os << "\n";

  const double b2 = separation_constants(p, f).second;
  const double m2 = static_cast<double>(p.m) * p.m;
  for (double x : detail::dump_grid(o)) {
    os << fmt17(x);
    if (o.compare_screening) {
      os << sep
         << fmt17(parabolic ? v_parabolic(p, f, x, false) : v_spherical(p, f, x, false)) << sep
         << fmt17(parabolic ? v_parabolic(p, f, x, true) : v_spherical(p, f, x, true));
    } else {
      os << sep
         << fmt17(parabolic ? v_parabolic(p, f, x, m.screening)
                            : v_spherical(p, f, x, m.screening));
    }
    if (o.terms) {
      if (parabolic) {
        os << sep << fmt17(-b2 / (2.0 * x));
        os << sep << fmt17((m2 - 1.0) / (8.0 * x * x));
        os << sep << fmt17(-f * x / 8.0);
        os << sep << fmt17(p.alpha_i * f / (x * x) * std::exp(-3.0 / x));
        os << sep << fmt17(p.alpha_i * f / (x * x));
      } else {
        os << sep << fmt17(-(p.z - 1) / x);
        os << sep << fmt17(p.alpha_i * f / (x * x));
        os << sep << fmt17(-f * x);
      }
      if (m.screening || o.compare_screening)
        os << sep << fmt17(screening_term(p, m.coords, x));
    }
    for (const TriangleBarrier& t : tris) os << sep << fmt17(t.value(x));
    os << "\n";
  }
}

} // namespace iondwell
