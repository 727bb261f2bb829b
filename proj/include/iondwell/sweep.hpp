#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "iondwell/atom.hpp"
#include "iondwell/constants.hpp"
#include "iondwell/dissipation.hpp"
#include "iondwell/errors.hpp"
#include "iondwell/geometry.hpp"
#include "iondwell/times.hpp"
#include "iondwell/triangle.hpp"

namespace iondwell {

enum class TimeUnit { AtomicUnits, Attoseconds };

inline std::string to_string(TimeUnit u) {
  return u == TimeUnit::AtomicUnits ? "au" : "as";
}
inline std::string to_string(Coordinates c) {
  return c == Coordinates::Parabolic ? "parabolic" : "spherical";
}
inline std::string to_string(FrictionMode m) {
  return m == FrictionMode::TotalShift ? "total-shift" : "cumulative";
}
inline std::string to_string(SphericalEnergyRule r) {
  return r == SphericalEnergyRule::FullBinding ? "binding" : "quarter";
}
inline std::string to_string(TriangleApexRule r) {
  return r == TriangleApexRule::MatchArea ? "area" : "max";
}

inline TimeUnit parse_time_unit(std::string_view s) {
  if (s == "au" || s == "atomic" || s == "a.u.") return TimeUnit::AtomicUnits;
  if (s == "as" || s == "attoseconds" || s == "atto") return TimeUnit::Attoseconds;
  throw ParseError("unknown time unit '" + std::string(s) + "' (expected au or as)");
}
inline Coordinates parse_coordinates(std::string_view s) {
  if (s == "parabolic" || s == "eta") return Coordinates::Parabolic;
  if (s == "spherical" || s == "radial") return Coordinates::SphericalFieldDirection;
  throw ParseError("unknown coordinates '" + std::string(s) + "' (expected parabolic or spherical)");
}
inline FrictionMode parse_friction_mode(std::string_view s) {
  if (s == "total-shift" || s == "total") return FrictionMode::TotalShift;
  if (s == "cumulative" || s == "running") return FrictionMode::Cumulative;
  throw ParseError("unknown friction mode '" + std::string(s) + "'");
}
inline SphericalEnergyRule parse_spherical_energy(std::string_view s) {
  if (s == "binding" || s == "full") return SphericalEnergyRule::FullBinding;
  if (s == "quarter") return SphericalEnergyRule::QuarterBinding;
  throw ParseError("unknown spherical energy rule '" + std::string(s) + "'");
}
inline TriangleApexRule parse_apex_rule(std::string_view s) {
  if (s == "area") return TriangleApexRule::MatchArea;
  if (s == "max" || s == "maximum") return TriangleApexRule::TrueMaximum;
  throw ParseError("unknown triangle apex rule '" + std::string(s) + "'");
}

/// Full description of one field sweep.
struct SweepConfig {
  std::string atom_name = "he4";
  AtomParams atom = helium();
  Coordinates coords = Coordinates::Parabolic;
  bool screening = true;
  std::vector<double> gamma_list = {0.0};
  FrictionMode mode = FrictionMode::TotalShift;
  SphericalEnergyRule energy_rule = SphericalEnergyRule::FullBinding;
  double f_start = 0.03; // a.u. of field
  double f_stop = 0.12;
  int f_steps = 64;
  std::string output_path;
  TimeUnit time_unit = TimeUnit::AtomicUnits;
  QuadratureOptions quadrature{};

  void validate() const {
    atom.validate();
    if (!(f_start > 0)) throw DomainError("SweepConfig: f_start must be > 0");
    if (!(f_stop > f_start)) throw DomainError("SweepConfig: f_stop must be > f_start");
    if (f_steps < 2) throw DomainError("SweepConfig: f_steps must be >= 2");
    if (gamma_list.empty()) throw DomainError("SweepConfig: gamma_list must not be empty");
    for (double g : gamma_list) FrictionSpec{g, mode}.validate();
  }

  PotentialModel model() const {
    PotentialModel m;
    m.coords = coords;
    m.screening = screening;
    m.energy_rule = energy_rule;
    m.params = atom;
    return m;
  }

  double field_at(int i) const {
    return f_start + (f_stop - f_start) * i / (f_steps - 1);
  }
};

enum class RowStatus { Ok, OverBarrier, NoExit, Error };

inline std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::OverBarrier: return "over-barrier";
    case RowStatus::NoExit: return "no-exit";
    default: return "error";
  }
}
inline RowStatus parse_row_status(std::string_view s) {
  if (s == "ok") return RowStatus::Ok;
  if (s == "over-barrier") return RowStatus::OverBarrier;
  if (s == "no-exit") return RowStatus::NoExit;
  if (s == "error") return RowStatus::Error;
  throw ParseError("unknown row status '" + std::string(s) + "'");
}

/// One sweep grid point. Times are stored in a.u.; unit conversion happens
/// only when the table is written.
struct SweepRow {
  double f = 0.0;
  double gamma = 0.0;
  RowStatus status = RowStatus::Ok;
  double tau_d = std::numeric_limits<double>::quiet_NaN();
  double tau_traversal = std::numeric_limits<double>::quiet_NaN();
  double t2 = std::numeric_limits<double>::quiet_NaN();
  double tau_dt = std::numeric_limits<double>::quiet_NaN();
  double tau_dr = std::numeric_limits<double>::quiet_NaN();
  double delta_e = std::numeric_limits<double>::quiet_NaN();
  double x1 = std::numeric_limits<double>::quiet_NaN();
  double x2 = std::numeric_limits<double>::quiet_NaN();
  double v_max = std::numeric_limits<double>::quiet_NaN();
  std::string note; // short reason for non-ok rows
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRow> rows;
};

/// Evaluates the full time pipeline at one (f, gamma) grid point.
inline SweepRow evaluate_sweep_point(const SweepConfig& cfg, double f, double gamma) {
  SweepRow row;
  row.f = f;
  row.gamma = gamma;
  try {
    const PotentialModel m = cfg.model();
    const double e = resolve_energy(m, f);
    TimeResult tr;
    if (gamma == 0.0) {
      const BarrierGeometry g = find_turning_points(m, f, e);
      tr = evaluate_times(BoundPotential{m, f}, e, g, cfg.quadrature);
    } else {
      tr = dissipative_dwell_time(m, f, e, FrictionSpec{gamma, cfg.mode}, cfg.quadrature);
    }
    row.tau_d = tr.tau_d;
    row.tau_traversal = tr.tau_traversal;
    row.t2 = tr.t2;
    row.tau_dt = tr.tau_dt;
    row.tau_dr = tr.tau_dr;
    row.delta_e = tr.delta_e;
    row.x1 = tr.geometry.x1;
    row.x2 = tr.geometry.x2;
    row.v_max = tr.geometry.v_max;
  } catch (const NoBarrierError& err) {
    row.status = RowStatus::OverBarrier;
    row.note = err.what();
  } catch (const NoExitPointError& err) {
    row.status = RowStatus::NoExit;
    row.note = err.what();
  } catch (const Error& err) {
    row.status = RowStatus::Error;
    row.note = err.what();
  }
  return row;
}

/// Runs the sweep over the field grid, one row per grid point per friction
/// coefficient, ordered by f then gamma. Barrier-less points are emitted as
/// over-barrier rows rather than dropped.
inline SweepTable run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<double> gammas = cfg.gamma_list;
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());

  SweepTable table{cfg, {}};
  table.rows.reserve(static_cast<size_t>(cfg.f_steps) * gammas.size());
  for (int i = 0; i < cfg.f_steps; ++i) {
    const double f = cfg.field_at(i);
    for (double gamma : gammas) table.rows.push_back(evaluate_sweep_point(cfg, f, gamma));
  }
  return table;
}

} // namespace iondwell
