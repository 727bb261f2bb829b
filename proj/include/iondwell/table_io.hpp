#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "iondwell/errors.hpp"
#include "iondwell/sweep.hpp"

namespace iondwell {

inline constexpr const char* kVersionString = "iondwell 0.1.0";

/// Shortest round-trip-exact decimal form of a double (17 significant
/// digits; locale-independent).
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline double parse_double(const std::string& tok, size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

} // namespace detail

/// Writes the table as commented-header, tab-separated text. Times are
/// converted to the configured unit here; everything else stays in a.u.
inline void write_table(const SweepTable& table, std::ostream& os) {
  const SweepConfig& c = table.config;
  const double tscale =
      c.time_unit == TimeUnit::Attoseconds ? constants::attoseconds_per_au_time : 1.0;

  os << "# " << kVersionString << " sweep\n";
  os << "# atom = " << c.atom_name << "\n";
  os << "# z = " << c.atom.z << "\n";
  os << "# ip0 = " << fmt17(c.atom.ip0) << "\n";
  os << "# alpha_n = " << fmt17(c.atom.alpha_n) << "\n";
  os << "# alpha_i = " << fmt17(c.atom.alpha_i) << "\n";
  os << "# m = " << c.atom.m << "\n";
  os << "# r0 = " << fmt17(c.atom.r0) << "\n";
  os << "# coords = " << to_string(c.coords) << "\n";
  os << "# screening = " << (c.screening ? "true" : "false") << "\n";
  os << "# spherical-energy = " << to_string(c.energy_rule) << "\n";
  os << "# mode = " << to_string(c.mode) << "\n";
  os << "# gammas =";
  for (double g : c.gamma_list) os << " " << fmt17(g);
  os << "\n";
  os << "# f-start = " << fmt17(c.f_start) << "\n";
  os << "# f-stop = " << fmt17(c.f_stop) << "\n";
  os << "# f-steps = " << c.f_steps << "\n";
  os << "# rel-tol = " << fmt17(c.quadrature.rel_tol) << "\n";
  os << "# time-unit = " << to_string(c.time_unit) << "\n";
  os << "# columns: f gamma status tau_d tau_traversal t2 tau_dt tau_dr delta_e x1 x2 v_max\n";

  for (const SweepRow& r : table.rows) {
    os << fmt17(r.f) << '\t' << fmt17(r.gamma) << '\t' << to_string(r.status) << '\t'
       << fmt17(r.tau_d * tscale) << '\t' << fmt17(r.tau_traversal * tscale) << '\t'
       << fmt17(r.t2) << '\t' << fmt17(r.tau_dt * tscale) << '\t' << fmt17(r.tau_dr * tscale)
       << '\t' << fmt17(r.delta_e) << '\t' << fmt17(r.x1) << '\t' << fmt17(r.x2) << '\t'
       << fmt17(r.v_max) << '\n';
    if (r.status != RowStatus::Ok && !r.note.empty())
      os << "# row f=" << fmt17(r.f) << " gamma=" << fmt17(r.gamma) << ": " << r.note << "\n";
  }
}

inline void write_table(const SweepTable& table, const std::string& path) {
  detail::ensure_parent_dir(path);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_table: cannot open '" + path + "' for writing");
  write_table(table, os);
}

/// Reads a table written by write_table. Row values are returned exactly as
/// written, i.e. times stay in the file's declared unit (recorded in
/// config.time_unit); no conversion is applied.
inline SweepTable read_table(std::istream& is, const std::string& origin = "<stream>") {
  SweepTable table;
  table.config.output_path = origin;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      // recover the header keys the readers care about
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
          const auto a = s.find_first_not_of(" \t");
          const auto b = s.find_last_not_of(" \t\r");
          s = a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(val);
        try {
          if (key == "time-unit") table.config.time_unit = parse_time_unit(val);
          else if (key == "coords") table.config.coords = parse_coordinates(val);
          else if (key == "screening") table.config.screening = val == "true";
          else if (key == "mode") table.config.mode = parse_friction_mode(val);
          else if (key == "atom") table.config.atom_name = val;
        } catch (const ParseError&) {
          throw ParseError("line " + std::to_string(line_no) + ": bad header value '" + val + "'");
        }
      }
      continue;
    }
    const std::vector<std::string> tok = detail::split_ws(line);
    if (tok.size() != 12)
      throw ParseError("line " + std::to_string(line_no) + ": expected 12 columns, got " +
                       std::to_string(tok.size()));
    SweepRow r;
    r.f = detail::parse_double(tok[0], line_no);
    r.gamma = detail::parse_double(tok[1], line_no);
    r.status = parse_row_status(tok[2]);
    r.tau_d = detail::parse_double(tok[3], line_no);
    r.tau_traversal = detail::parse_double(tok[4], line_no);
    r.t2 = detail::parse_double(tok[5], line_no);
    r.tau_dt = detail::parse_double(tok[6], line_no);
    r.tau_dr = detail::parse_double(tok[7], line_no);
    r.delta_e = detail::parse_double(tok[8], line_no);
    r.x1 = detail::parse_double(tok[9], line_no);
    r.x2 = detail::parse_double(tok[10], line_no);
    r.v_max = detail::parse_double(tok[11], line_no);
    table.rows.push_back(r);
  }
  return table;
}

inline SweepTable read_table(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_table: cannot open '" + path + "'");
  return read_table(is, path);
}

} // namespace iondwell
