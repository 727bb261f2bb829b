// Command-line front end: field sweeps, potential curve dumps, barrier
// geometry tables and experimental-data overlays. All numeric I/O is in
// Hartree atomic units unless a time unit of attoseconds is requested.
//
// Every subcommand accepts --config <file> with `key = value` lines (keys are
// the long option names); explicit command-line flags override config values.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iondwell/iondwell.hpp"

namespace {

using namespace iondwell;

// ---------------------------------------------------------------------------
// key = value config files
// ---------------------------------------------------------------------------

class ConfigFile {
 public:
  static ConfigFile load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open config file '" + path + "'");
    ConfigFile cfg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::string trimmed = trim(line);
      if (trimmed.empty() || trimmed[0] == '#') continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw ParseError(path + " line " + std::to_string(line_no) + ": expected key = value");
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string val = trim(trimmed.substr(eq + 1));
      if (key.empty())
        throw ParseError(path + " line " + std::to_string(line_no) + ": empty key");
      cfg.kv_[key] = val;
      cfg.line_[key] = line_no;
      cfg.path_ = path;
    }
    return cfg;
  }

  // Applies the config value unless the option was given on the command line.
  template <typename T>
  void apply(const CLI::App& cmd, const std::string& key, T& target) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    if (cmd.count("--" + key) > 0) return; // command line wins
    parse_into(it->second, key, target);
  }

  // Unknown keys are config errors, not silent no-ops.
  void reject_unused() const {
    for (const auto& [key, val] : kv_)
      if (!used_.count(key))
        throw ParseError(path_ + " line " + std::to_string(line_.at(key)) +
                         ": unknown key '" + key + "'");
  }

 private:
  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
  }

  void parse_into(const std::string& val, const std::string& key, std::string& out) const {
    out = val;
    (void)key;
  }
  void parse_into(const std::string& val, const std::string& key, double& out) const {
    out = detail::parse_double(val, line_.at(key));
  }
  void parse_into(const std::string& val, const std::string& key, int& out) const {
    out = static_cast<int>(detail::parse_double(val, line_.at(key)));
  }
  void parse_into(const std::string& val, const std::string& key, bool& out) const {
    if (val == "true" || val == "1" || val == "on" || val == "yes") out = true;
    else if (val == "false" || val == "0" || val == "off" || val == "no") out = false;
    else
      throw ParseError(path_ + " line " + std::to_string(line_.at(key)) +
                       ": expected a boolean, got '" + val + "'");
  }
  template <typename T>
  void parse_into(const std::string& val, const std::string& key, std::optional<T>& out) const {
    T v{};
    parse_into(val, key, v);
    out = v;
  }

  std::string path_;
  std::map<std::string, std::string> kv_;
  std::map<std::string, size_t> line_;
  mutable std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// shared option blocks
// ---------------------------------------------------------------------------

struct AtomCliOptions {
  std::string name = "he4";
  std::optional<double> ip0, alpha_n, alpha_i, r0;
  std::optional<int> z, m;
};

void add_atom_options(CLI::App& cmd, AtomCliOptions& a) {
  cmd.add_option("--atom", a.name, "named parameter set (he4)")->capture_default_str();
  cmd.add_option("--z", a.z, "override: nuclear charge");
  cmd.add_option("--ip0", a.ip0, "override: zero-field ionization energy (hartree)");
  cmd.add_option("--alpha-n", a.alpha_n, "override: atom polarizability (a.u.)");
  cmd.add_option("--alpha-i", a.alpha_i, "override: ion polarizability (a.u.)");
  cmd.add_option("--m", a.m, "override: magnetic quantum number");
  cmd.add_option("--r0", a.r0, "override: screening radius (bohr)");
}

void apply_atom_config(const ConfigFile& cfg, const CLI::App& cmd, AtomCliOptions& a) {
  cfg.apply(cmd, "atom", a.name);
  cfg.apply(cmd, "z", a.z);
  cfg.apply(cmd, "ip0", a.ip0);
  cfg.apply(cmd, "alpha-n", a.alpha_n);
  cfg.apply(cmd, "alpha-i", a.alpha_i);
  cfg.apply(cmd, "m", a.m);
  cfg.apply(cmd, "r0", a.r0);
}

AtomParams resolve_atom(const AtomCliOptions& a) {
  const std::optional<AtomParams> base = named_atom(a.name);
  if (!base) throw ParseError("unknown atom parameter set '" + a.name + "'");
  AtomParams p = *base;
  if (a.z) p.z = *a.z;
  if (a.ip0) p.ip0 = *a.ip0;
  if (a.alpha_n) p.alpha_n = *a.alpha_n;
  if (a.alpha_i) p.alpha_i = *a.alpha_i;
  if (a.m) p.m = *a.m;
  if (a.r0) p.r0 = *a.r0;
  p.validate();
  return p;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(detail::parse_double(tok, 0));
  }
  if (out.empty()) throw ParseError("empty numeric list '" + csv + "'");
  return out;
}

void write_to(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  detail::ensure_parent_dir(path);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << content;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical dwell times for tunnel ionization"};
  app.require_subcommand(1);

  // --- sweep ---
  AtomCliOptions sweep_atom;
  std::string sw_config, sw_coords = "parabolic", sw_gammas = "0", sw_mode = "total-shift";
  std::string sw_energy = "binding", sw_unit = "au", sw_output;
  bool sw_screening = true;
  double sw_fstart = 0.03, sw_fstop = 0.12, sw_rel_tol = 1e-8;
  int sw_fsteps = 64;
  CLI::App* sweep = app.add_subcommand("sweep", "run the time pipeline over a field grid");
  sweep->add_option("--config", sw_config, "key = value config file");
  add_atom_options(*sweep, sweep_atom);
  sweep->add_option("--coords", sw_coords, "parabolic | spherical")->capture_default_str();
  sweep->add_option("--screening", sw_screening, "electron screening on/off")->capture_default_str();
  sweep->add_option("--gammas", sw_gammas, "comma-separated friction coefficients")->capture_default_str();
  sweep->add_option("--mode", sw_mode, "total-shift | cumulative")->capture_default_str();
  sweep->add_option("--spherical-energy", sw_energy, "binding | quarter")->capture_default_str();
  sweep->add_option("--f-start", sw_fstart, "grid start (a.u. of field)")->capture_default_str();
  sweep->add_option("--f-stop", sw_fstop, "grid stop (a.u. of field)")->capture_default_str();
  sweep->add_option("--f-steps", sw_fsteps, "grid points")->capture_default_str();
  sweep->add_option("--time-unit", sw_unit, "au | as")->capture_default_str();
  sweep->add_option("--rel-tol", sw_rel_tol, "quadrature relative tolerance")->capture_default_str();
  sweep->add_option("-o,--output", sw_output, "output path ('-' = stdout)");

  // --- potential ---
  AtomCliOptions pot_atom;
  std::string pot_config, pot_coords = "parabolic", pot_flist = "0.06", pot_apex = "area", pot_output;
  bool pot_screening = false;
  PotentialDumpOptions dump_opts;
  CLI::App* pot = app.add_subcommand("potential", "dump potential curves as plot-ready text");
  pot->add_option("--config", pot_config, "key = value config file");
  add_atom_options(*pot, pot_atom);
  pot->add_option("--coords", pot_coords, "parabolic | spherical")->capture_default_str();
  pot->add_option("--screening", pot_screening, "electron screening on/off")->capture_default_str();
  pot->add_option("--f", pot_flist, "comma-separated field values")->capture_default_str();
  pot->add_option("--x-min", dump_opts.x_min, "grid start (bohr)")->capture_default_str();
  pot->add_option("--x-max", dump_opts.x_max, "grid stop (bohr)")->capture_default_str();
  pot->add_option("--samples", dump_opts.samples, "grid points")->capture_default_str();
  pot->add_flag("--log", dump_opts.log_spacing, "logarithmic sample grid");
  pot->add_option("--separator", dump_opts.separator, "column separator")->capture_default_str();
  pot->add_flag("--terms", dump_opts.terms, "per-term decomposition columns");
  pot->add_flag("--compare-screening", dump_opts.compare_screening,
                "emit unscreened and screened totals");
  pot->add_flag("--triangle", dump_opts.triangle, "triangle-approximation column(s)");
  pot->add_option("--apex", pot_apex, "triangle apex rule: area | max")->capture_default_str();
  pot->add_option("-o,--output", pot_output, "output path ('-' = stdout)");

  // --- geometry ---
  AtomCliOptions geo_atom;
  std::string geo_config, geo_coords = "parabolic", geo_energy = "binding", geo_output;
  bool geo_screening = true;
  double geo_fstart = 0.03, geo_fstop = 0.12;
  int geo_fsteps = 10;
  CLI::App* geo = app.add_subcommand("geometry", "print turning points and barrier maxima");
  geo->add_option("--config", geo_config, "key = value config file");
  add_atom_options(*geo, geo_atom);
  geo->add_option("--coords", geo_coords, "parabolic | spherical")->capture_default_str();
  geo->add_option("--screening", geo_screening, "electron screening on/off")->capture_default_str();
  geo->add_option("--spherical-energy", geo_energy, "binding | quarter")->capture_default_str();
  geo->add_option("--f-start", geo_fstart)->capture_default_str();
  geo->add_option("--f-stop", geo_fstop)->capture_default_str();
  geo->add_option("--f-steps", geo_fsteps)->capture_default_str();
  geo->add_option("-o,--output", geo_output, "output path ('-' = stdout)");

  // --- overlay ---
  std::string ov_config, ov_table, ov_data, ov_output;
  double ov_gamma = 0.0;
  CLI::App* ov = app.add_subcommand("overlay", "align experimental data with a sweep table");
  ov->add_option("--config", ov_config, "key = value config file");
  ov->add_option("--table", ov_table, "sweep table path");
  ov->add_option("--data", ov_data, "experimental data path");
  ov->add_option("--gamma", ov_gamma, "which gamma curve to compare against")->capture_default_str();
  ov->add_option("-o,--output", ov_output, "output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      if (!sw_config.empty()) {
        const ConfigFile cfg = ConfigFile::load(sw_config);
        apply_atom_config(cfg, *sweep, sweep_atom);
        cfg.apply(*sweep, "coords", sw_coords);
        cfg.apply(*sweep, "screening", sw_screening);
        cfg.apply(*sweep, "gammas", sw_gammas);
        cfg.apply(*sweep, "mode", sw_mode);
        cfg.apply(*sweep, "spherical-energy", sw_energy);
        cfg.apply(*sweep, "f-start", sw_fstart);
        cfg.apply(*sweep, "f-stop", sw_fstop);
        cfg.apply(*sweep, "f-steps", sw_fsteps);
        cfg.apply(*sweep, "time-unit", sw_unit);
        cfg.apply(*sweep, "rel-tol", sw_rel_tol);
        cfg.apply(*sweep, "output", sw_output);
        cfg.reject_unused();
      }
      SweepConfig cfg;
      cfg.atom_name = sweep_atom.name;
      cfg.atom = resolve_atom(sweep_atom);
      cfg.coords = parse_coordinates(sw_coords);
      cfg.screening = sw_screening;
      cfg.gamma_list = parse_double_list(sw_gammas);
      cfg.mode = parse_friction_mode(sw_mode);
      cfg.energy_rule = parse_spherical_energy(sw_energy);
      cfg.f_start = sw_fstart;
      cfg.f_stop = sw_fstop;
      cfg.f_steps = sw_fsteps;
      cfg.time_unit = parse_time_unit(sw_unit);
      cfg.quadrature.rel_tol = sw_rel_tol;
      cfg.output_path = sw_output;
      cfg.validate();
      const SweepTable table = run_sweep(cfg);
      std::ostringstream os;
      write_table(table, os);
      write_to(sw_output, os.str());
      return 0;
    }

    if (pot->parsed()) {
      if (!pot_config.empty()) {
        const ConfigFile cfg = ConfigFile::load(pot_config);
        apply_atom_config(cfg, *pot, pot_atom);
        cfg.apply(*pot, "coords", pot_coords);
        cfg.apply(*pot, "screening", pot_screening);
        cfg.apply(*pot, "f", pot_flist);
        cfg.apply(*pot, "x-min", dump_opts.x_min);
        cfg.apply(*pot, "x-max", dump_opts.x_max);
        cfg.apply(*pot, "samples", dump_opts.samples);
        cfg.apply(*pot, "log", dump_opts.log_spacing);
        cfg.apply(*pot, "separator", dump_opts.separator);
        cfg.apply(*pot, "terms", dump_opts.terms);
        cfg.apply(*pot, "compare-screening", dump_opts.compare_screening);
        cfg.apply(*pot, "triangle", dump_opts.triangle);
        cfg.apply(*pot, "apex", pot_apex);
        cfg.apply(*pot, "output", pot_output);
        cfg.reject_unused();
      }
      PotentialModel m;
      m.params = resolve_atom(pot_atom);
      m.coords = parse_coordinates(pot_coords);
      m.screening = pot_screening;
      m.apex_rule = parse_apex_rule(pot_apex);
      std::ostringstream os;
      bool first = true;
      for (double f : parse_double_list(pot_flist)) {
        if (!first) os << "\n\n"; // gnuplot index separator
        first = false;
        dump_potential(m, f, dump_opts, os);
      }
      write_to(pot_output, os.str());
      return 0;
    }

    if (geo->parsed()) {
      if (!geo_config.empty()) {
        const ConfigFile cfg = ConfigFile::load(geo_config);
        apply_atom_config(cfg, *geo, geo_atom);
        cfg.apply(*geo, "coords", geo_coords);
        cfg.apply(*geo, "screening", geo_screening);
        cfg.apply(*geo, "spherical-energy", geo_energy);
        cfg.apply(*geo, "f-start", geo_fstart);
        cfg.apply(*geo, "f-stop", geo_fstop);
        cfg.apply(*geo, "f-steps", geo_fsteps);
        cfg.apply(*geo, "output", geo_output);
        cfg.reject_unused();
      }
      PotentialModel m;
      m.params = resolve_atom(geo_atom);
      m.coords = parse_coordinates(geo_coords);
      m.screening = geo_screening;
      m.energy_rule = parse_spherical_energy(geo_energy);
      m.validate();
      if (geo_fsteps < 1) throw ParseError("geometry: f-steps must be >= 1");
      std::ostringstream os;
      os << "# " << kVersionString << " geometry\n";
      os << "# coords = " << to_string(m.coords) << "\n";
      os << "# screening = " << (m.screening ? "true" : "false") << "\n";
      os << "# columns: f status x1 x2 x_max v_max energy\n";
      for (int i = 0; i < geo_fsteps; ++i) {
        const double f = geo_fsteps == 1
                             ? geo_fstart
                             : geo_fstart + (geo_fstop - geo_fstart) * i / (geo_fsteps - 1);
        const double e = resolve_energy(m, f);
        os << fmt17(f);
        try {
          const BarrierGeometry g = find_turning_points(m, f, e);
          os << "\tok\t" << fmt17(g.x1) << '\t' << fmt17(g.x2) << '\t' << fmt17(g.x_max) << '\t'
             << fmt17(g.v_max) << '\t' << fmt17(g.energy) << "\n";
        } catch (const NoBarrierError&) {
          os << "\tover-barrier\tnan\tnan\tnan\tnan\t" << fmt17(e) << "\n";
        }
      }
      write_to(geo_output, os.str());
      return 0;
    }

    if (ov->parsed()) {
      if (!ov_config.empty()) {
        const ConfigFile cfg = ConfigFile::load(ov_config);
        cfg.apply(*ov, "table", ov_table);
        cfg.apply(*ov, "data", ov_data);
        cfg.apply(*ov, "gamma", ov_gamma);
        cfg.apply(*ov, "output", ov_output);
        cfg.reject_unused();
      }
      if (ov_table.empty() || ov_data.empty())
        throw ParseError("overlay: --table and --data are required");
      const SweepTable table = read_table(ov_table);
      const OverlayReport rep = overlay_experimental(table, ov_data, ov_gamma);
      std::ostringstream os;
      write_overlay(rep, os);
      write_to(ov_output, os.str());
      for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
