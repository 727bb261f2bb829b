#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "iondwell/dump.hpp"
#include "iondwell/overlay.hpp"
#include "iondwell/sweep.hpp"
#include "iondwell/table_io.hpp"

using namespace iondwell;

namespace {

SweepConfig small_config(bool screening, int steps = 5) {
  SweepConfig cfg;
  cfg.screening = screening;
  cfg.f_start = 0.05;
  cfg.f_stop = 0.09;
  cfg.f_steps = steps;
  return cfg;
}

std::string render(const SweepTable& t) {
  std::ostringstream os;
  write_table(t, os);
  return os.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("config validation") {
  SweepConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.f_start = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.f_stop = cfg.f_start;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.f_steps = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.gamma_list = {};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.gamma_list = {1.2};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("grid cardinality: two steps, one gamma, two rows") {
  const SweepTable t = run_sweep(small_config(true, 2));
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].f == 0.05);
  CHECK(t.rows[1].f == 0.09);
  CHECK(t.rows[0].status == RowStatus::Ok);
}

TEST_CASE("rows come out ordered by f then gamma") {
  SweepConfig cfg = small_config(true, 3);
  cfg.gamma_list = {0.00575, -0.005, 0.0};
  const SweepTable t = run_sweep(cfg);
  REQUIRE(t.rows.size() == 9);
  for (size_t i = 1; i < t.rows.size(); ++i) {
    const bool ordered = t.rows[i - 1].f < t.rows[i].f ||
                         (t.rows[i - 1].f == t.rows[i].f && t.rows[i - 1].gamma < t.rows[i].gamma);
    CHECK(ordered);
  }
}

TEST_CASE("screened dwell stays below unscreened row by row") {
  const SweepTable ts = run_sweep(small_config(true));
  const SweepTable tu = run_sweep(small_config(false));
  REQUIRE(ts.rows.size() == tu.rows.size());
  for (size_t i = 0; i < ts.rows.size(); ++i) {
    REQUIRE(ts.rows[i].status == RowStatus::Ok);
    CHECK(ts.rows[i].tau_d < tu.rows[i].tau_d);
  }
}

TEST_CASE("every ok row satisfies the reciprocal dwell identity") {
  SweepConfig cfg = small_config(true, 4);
  cfg.gamma_list = {-0.005, 0.0, 0.00575};
  const SweepTable t = run_sweep(cfg);
  for (const SweepRow& r : t.rows) {
    REQUIRE(r.status == RowStatus::Ok);
    CHECK(r.tau_d > 0.0);
    CHECK(r.t2 > 0.0);
    CHECK(r.t2 <= 1.0);
    CHECK(r.tau_dt >= r.tau_d);
    CHECK(r.tau_dr >= r.tau_d);
    CHECK(1.0 / r.tau_dt + 1.0 / r.tau_dr == Catch::Approx(1.0 / r.tau_d).epsilon(1e-12));
  }
}

TEST_CASE("barrier-less points are marked, not dropped") {
  SweepConfig cfg;
  cfg.coords = Coordinates::SphericalFieldDirection;
  cfg.screening = false;
  cfg.f_start = 0.15;
  cfg.f_stop = 0.35;
  cfg.f_steps = 5;
  const SweepTable t = run_sweep(cfg);
  REQUIRE(t.rows.size() == 5);
  bool any_over = false, any_ok = false;
  for (const SweepRow& r : t.rows) {
    if (r.status == RowStatus::OverBarrier) {
      any_over = true;
      CHECK(std::isnan(r.tau_d));
      CHECK_FALSE(r.note.empty());
    }
    if (r.status == RowStatus::Ok) any_ok = true;
  }
  CHECK(any_over);
  CHECK(any_ok);
}

TEST_CASE("identical configs render byte-identical tables") {
  const SweepConfig cfg = small_config(true, 4);
  CHECK(render(run_sweep(cfg)) == render(run_sweep(cfg)));
}

TEST_CASE("write/read round trip preserves every value") {
  SweepConfig cfg = small_config(true, 3);
  cfg.gamma_list = {0.0, 0.00575};
  const SweepTable t = run_sweep(cfg);
  const auto path = temp_file("iondwell_roundtrip.tsv");
  write_table(t, path.string());
  const SweepTable r = read_table(path.string());
  REQUIRE(r.rows.size() == t.rows.size());
  CHECK(r.config.time_unit == t.config.time_unit);
  CHECK(r.config.coords == t.config.coords);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(r.rows[i].f == t.rows[i].f);
    CHECK(r.rows[i].gamma == t.rows[i].gamma);
    CHECK(r.rows[i].status == t.rows[i].status);
    CHECK(r.rows[i].tau_d == t.rows[i].tau_d);
    CHECK(r.rows[i].tau_traversal == t.rows[i].tau_traversal);
    CHECK(r.rows[i].t2 == t.rows[i].t2);
    CHECK(r.rows[i].tau_dt == t.rows[i].tau_dt);
    CHECK(r.rows[i].tau_dr == t.rows[i].tau_dr);
    CHECK(r.rows[i].delta_e == t.rows[i].delta_e);
    CHECK(r.rows[i].x1 == t.rows[i].x1);
    CHECK(r.rows[i].x2 == t.rows[i].x2);
    CHECK(r.rows[i].v_max == t.rows[i].v_max);
  }
  std::filesystem::remove(path);
}

TEST_CASE("attosecond output rescales only the four time columns") {
  SweepConfig cfg = small_config(true, 2);
  const SweepTable t_au = run_sweep(cfg);
  cfg.time_unit = TimeUnit::Attoseconds;
  const SweepTable t_as = run_sweep(cfg);

  const auto p_au = temp_file("iondwell_au.tsv");
  const auto p_as = temp_file("iondwell_as.tsv");
  write_table(t_au, p_au.string());
  write_table(t_as, p_as.string());
  const SweepTable r_au = read_table(p_au.string());
  const SweepTable r_as = read_table(p_as.string());
  REQUIRE(r_au.rows.size() == r_as.rows.size());
  const double s = constants::attoseconds_per_au_time;
  for (size_t i = 0; i < r_au.rows.size(); ++i) {
    CHECK(r_as.rows[i].tau_d == Catch::Approx(r_au.rows[i].tau_d * s).epsilon(1e-15));
    CHECK(r_as.rows[i].tau_traversal ==
          Catch::Approx(r_au.rows[i].tau_traversal * s).epsilon(1e-15));
    CHECK(r_as.rows[i].t2 == r_au.rows[i].t2);           // dimensionless
    CHECK(r_as.rows[i].delta_e == r_au.rows[i].delta_e); // stays hartree
    CHECK(r_as.rows[i].x1 == r_au.rows[i].x1);           // stays bohr
  }
  std::filesystem::remove(p_au);
  std::filesystem::remove(p_as);
}

TEST_CASE("overlay with an empty data file yields zero points") {
  const auto data = temp_file("iondwell_empty.dat");
  std::ofstream(data.string()) << "# nothing here\n";
  const SweepTable t = run_sweep(small_config(true, 3));
  const OverlayReport rep = overlay_experimental(t, data.string(), 0.0);
  CHECK(rep.points.empty());
  CHECK(rep.warnings.empty());
  std::filesystem::remove(data);
}

TEST_CASE("self-overlay has zero residuals") {
  const SweepTable t = run_sweep(small_config(true, 4));
  const auto data = temp_file("iondwell_self.dat");
  {
    std::ofstream os(data.string());
    for (const SweepRow& r : t.rows) os << fmt17(r.f) << " " << fmt17(r.tau_d) << "\n";
  }
  const OverlayReport rep = overlay_experimental(t, data.string(), 0.0);
  REQUIRE(rep.points.size() == t.rows.size());
  for (const OverlayPoint& p : rep.points) {
    CHECK(p.residual == 0.0);
    CHECK(p.f_model == p.f_exp);
  }
  std::filesystem::remove(data);
}

TEST_CASE("a five percent offset shows up as a five percent residual") {
  const SweepTable t = run_sweep(small_config(true, 4));
  const auto data = temp_file("iondwell_plus5.dat");
  {
    std::ofstream os(data.string());
    for (const SweepRow& r : t.rows)
      os << fmt17(r.f) << " " << fmt17(r.tau_d * 1.05) << " 0.1\n";
  }
  const OverlayReport rep = overlay_experimental(t, data.string(), 0.0);
  REQUIRE(rep.points.size() == t.rows.size());
  for (const OverlayPoint& p : rep.points) {
    CHECK(p.rel_residual == Catch::Approx(0.05).epsilon(1e-9));
    CHECK(p.sigma == 0.1);
  }
  std::filesystem::remove(data);
}

TEST_CASE("overlay parse errors carry the line number") {
  const SweepTable t = run_sweep(small_config(true, 3));
  const auto data = temp_file("iondwell_bad.dat");
  std::ofstream(data.string()) << "0.05 1.0\n0.06 2.0\n0.07 oops\n";
  try {
    overlay_experimental(t, data.string(), 0.0);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::filesystem::remove(data);
}

TEST_CASE("unit mismatch between data file and table is flagged and converted") {
  const SweepTable t = run_sweep(small_config(true, 3)); // table in a.u.
  const auto data = temp_file("iondwell_as.dat");
  {
    std::ofstream os(data.string());
    os << "# time-unit = as\n";
    for (const SweepRow& r : t.rows)
      os << fmt17(r.f) << " " << fmt17(r.tau_d * constants::attoseconds_per_au_time) << "\n";
  }
  const OverlayReport rep = overlay_experimental(t, data.string(), 0.0);
  REQUIRE_FALSE(rep.warnings.empty());
  REQUIRE(rep.points.size() == t.rows.size());
  for (const OverlayPoint& p : rep.points)
    CHECK(p.residual == Catch::Approx(0.0).margin(1e-12 * std::abs(p.t_model)));
  std::filesystem::remove(data);
}

TEST_CASE("potential dump: decomposition columns add up to the total") {
  PotentialModel m;
  m.coords = Coordinates::Parabolic;
  m.screening = true;
  PotentialDumpOptions o;
  o.x_min = 1.0;
  o.x_max = 20.0;
  o.samples = 40;
  o.terms = true;
  std::ostringstream os;
  dump_potential(m, 0.06, o, os);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    // columns: x v_total v_coulomb v_centrifugal v_field v_pol v_pol_bare v_screening_term
    double x, vt, vc, vcent, vf, vp, vpb, vs;
    REQUIRE((ls >> x >> vt >> vc >> vcent >> vf >> vp >> vpb >> vs));
    CHECK(vt == Catch::Approx(vc + vcent + vf + vp + vs).margin(1e-14));
    // Fig. 1 convention: the bare polarization term has no damping factor
    CHECK(vpb == Catch::Approx(helium().alpha_i * 0.06 / (x * x)).epsilon(1e-13));
    ++rows;
  }
  CHECK(rows == 40);
}

TEST_CASE("potential dump: screened minus unscreened equals the screening term") {
  PotentialModel m;
  m.coords = Coordinates::Parabolic;
  m.screening = false;
  PotentialDumpOptions o;
  o.x_min = 0.8;
  o.x_max = 15.0;
  o.samples = 25;
  o.compare_screening = true;
  std::ostringstream os;
  dump_potential(m, 0.08, o, os);
  std::istringstream is(os.str());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double x, vu, vs;
    REQUIRE((ls >> x >> vu >> vs));
    CHECK(vs - vu ==
          Catch::Approx(screening_term(helium(), Coordinates::Parabolic, x)).margin(1e-14));
  }
}

TEST_CASE("potential dump: single-point grid and custom separator") {
  PotentialModel m;
  m.coords = Coordinates::SphericalFieldDirection;
  PotentialDumpOptions o;
  o.x_min = 5.0;
  o.samples = 1;
  o.separator = ",";
  std::ostringstream os;
  dump_potential(m, 0.06, o, os);
  int rows = 0;
  std::istringstream is(os.str());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    CHECK(line.find(',') != std::string::npos);
    ++rows;
  }
  CHECK(rows == 1);
}

TEST_CASE("potential dump: triangle columns trace the overlay") {
  PotentialModel m;
  m.coords = Coordinates::Parabolic;
  m.screening = false;
  PotentialDumpOptions o;
  o.x_min = 2.0;
  o.x_max = 20.0;
  o.samples = 10;
  o.triangle = true;
  std::ostringstream os;
  dump_potential(m, 0.07, o, os);

  PotentialModel tm = m;
  tm.triangle = true;
  const TriangleBarrier tri = std::get<TriangleBarrier>(bind_model(tm, 0.07));

  std::istringstream is(os.str());
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double x, v, t;
    REQUIRE((ls >> x >> v >> t));
    CHECK(t == Catch::Approx(tri.value(x)).margin(1e-12));
  }
}
