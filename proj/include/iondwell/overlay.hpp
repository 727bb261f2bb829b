#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "iondwell/constants.hpp"
#include "iondwell/errors.hpp"
#include "iondwell/sweep.hpp"
#include "iondwell/table_io.hpp"

namespace iondwell {

/// One experimental point aligned with its nearest model grid point.
/// Times are in the table's unit; residual = t_exp - t_model.
struct OverlayPoint {
  double f_exp = 0.0;
  double t_exp = 0.0;
  double sigma = std::numeric_limits<double>::quiet_NaN(); // optional uncertainty
  double f_model = 0.0;
  double t_model = 0.0;
  double residual = 0.0;
  double rel_residual = 0.0;
};

struct OverlayReport {
  std::string table_path;
  std::string data_path;
  double gamma = 0.0;
  TimeUnit time_unit = TimeUnit::AtomicUnits;
  std::vector<OverlayPoint> points;
  std::vector<std::string> warnings;
};

/// Parses a two-column (field a.u., time) data file with an optional third
/// uncertainty column. Comment lines may declare `# time-unit = as|au`;
/// when the declared unit differs from `table_unit` the times are converted
/// and a warning is recorded.
inline std::vector<OverlayPoint> read_experimental_points(const std::string& path,
                                                          TimeUnit table_unit,
                                                          std::vector<std::string>& warnings) {
  std::ifstream is(path);
  if (!is) throw Error("overlay: cannot open data file '" + path + "'");

  std::optional<TimeUnit> declared;
  std::vector<OverlayPoint> pts;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.find("time-unit") != std::string::npos) {
        std::string val = line.substr(eq + 1);
        const auto a = val.find_first_not_of(" \t");
        const auto b = val.find_last_not_of(" \t");
        if (a != std::string::npos) declared = parse_time_unit(val.substr(a, b - a + 1));
      }
      continue;
    }
    const std::vector<std::string> tok = detail::split_ws(line);
    if (tok.size() < 2 || tok.size() > 3)
      throw ParseError("line " + std::to_string(line_no) + ": expected 2 or 3 columns, got " +
                       std::to_string(tok.size()));
    OverlayPoint p;
    p.f_exp = detail::parse_double(tok[0], line_no);
    p.t_exp = detail::parse_double(tok[1], line_no);
    if (tok.size() == 3) p.sigma = detail::parse_double(tok[2], line_no);
    pts.push_back(p);
  }

  if (declared && *declared != table_unit) {
    const double scale = table_unit == TimeUnit::Attoseconds
                             ? constants::attoseconds_per_au_time
                             : 1.0 / constants::attoseconds_per_au_time;
    for (OverlayPoint& p : pts) {
      p.t_exp *= scale;
      if (std::isfinite(p.sigma)) p.sigma *= scale;
    }
    warnings.push_back("data file declares time-unit " + to_string(*declared) +
                       " but the table is in " + to_string(table_unit) +
                       "; data converted to the table unit");
  }
  return pts;
}

/// Aligns experimental points with the nearest model grid point of the
/// selected gamma curve and reports residuals. No fitting is performed.
inline OverlayReport overlay_experimental(const SweepTable& table, const std::string& data_path,
                                          double gamma_select = 0.0) {
  OverlayReport rep;
  rep.table_path = table.config.output_path;
  rep.data_path = data_path;
  rep.gamma = gamma_select;
  rep.time_unit = table.config.time_unit;

  std::vector<const SweepRow*> curve;
  for (const SweepRow& r : table.rows)
    if (r.gamma == gamma_select && r.status == RowStatus::Ok) curve.push_back(&r);
  if (curve.empty())
    rep.warnings.push_back("table holds no ok rows for gamma = " + fmt17(gamma_select));

  rep.points = read_experimental_points(data_path, rep.time_unit, rep.warnings);
  if (curve.empty()) {
    rep.points.clear();
    return rep;
  }

  for (OverlayPoint& p : rep.points) {
    const SweepRow* best = curve.front();
    for (const SweepRow* r : curve)
      if (std::abs(r->f - p.f_exp) < std::abs(best->f - p.f_exp)) best = r;
    p.f_model = best->f;
    p.t_model = best->tau_d;
    p.residual = p.t_exp - p.t_model;
    p.rel_residual = p.t_model != 0 ? p.residual / p.t_model : std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

inline void write_overlay(const OverlayReport& rep, std::ostream& os) {
  os << "# " << kVersionString << " overlay\n";
  os << "# table = " << rep.table_path << "\n";
  os << "# data = " << rep.data_path << "\n";
  os << "# gamma = " << fmt17(rep.gamma) << "\n";
  os << "# time-unit = " << to_string(rep.time_unit) << "\n";
  for (const std::string& w : rep.warnings) os << "# warning: " << w << "\n";
  os << "# points = " << rep.points.size() << "\n";
  os << "# columns: f_exp f_model t_exp t_model residual rel_residual sigma\n";
  for (const OverlayPoint& p : rep.points) {
    os << fmt17(p.f_exp) << '\t' << fmt17(p.f_model) << '\t' << fmt17(p.t_exp) << '\t'
       << fmt17(p.t_model) << '\t' << fmt17(p.residual) << '\t' << fmt17(p.rel_residual) << '\t'
       << fmt17(p.sigma) << '\n';
  }
}

} // namespace iondwell
