#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "iondwell/dissipation.hpp"
#include "iondwell/triangle.hpp"
#include "oracles.hpp"

using namespace iondwell;

namespace {

const AtomParams he = helium();

struct FlatBarrier {
  double v0 = 1.0;
  double value(double) const { return v0; }
  double derivative(double) const { return 0.0; }
};

PotentialModel screened_parabolic() {
  PotentialModel m;
  m.coords = Coordinates::Parabolic;
  m.screening = true;
  m.params = he;
  return m;
}

} // namespace

TEST_CASE("friction spec sanity bound") {
  CHECK_NOTHROW((FrictionSpec{0.00575, FrictionMode::TotalShift}.validate()));
  CHECK_NOTHROW((FrictionSpec{-0.999, FrictionMode::Cumulative}.validate()));
  CHECK_THROWS_AS((FrictionSpec{1.0, FrictionMode::TotalShift}.validate()), DomainError);
  CHECK_THROWS_AS((FrictionSpec{-1.5, FrictionMode::TotalShift}.validate()), DomainError);
}

TEST_CASE("dissipated energy") {
  // gamma = 0 loses nothing, exactly
  const PotentialModel m = screened_parabolic();
  const double f = 0.07;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  const BarrierGeometry g = find_turning_points(m, f, e);
  CHECK(dissipated_energy(BoundPotential{m, f}, e, g, 0.0) == 0.0);

  // constant-k barrier: Delta E = gamma k0 L
  const double v0 = 0.8, el = 0.3, l = 3.0;
  const double k0 = std::sqrt(2.0 * (v0 - el));
  BarrierGeometry gf;
  gf.x1 = 0.0;
  gf.x2 = l;
  gf.x_max = l / 2;
  gf.v_max = v0;
  gf.energy = el;
  CHECK(dissipated_energy(FlatBarrier{v0}, el, gf, 0.02) ==
        Catch::Approx(0.02 * k0 * l).epsilon(1e-9));

  // first-order definition: exactly linear in gamma
  const double d1 = dissipated_energy(BoundPotential{m, f}, e, g, 0.003);
  const double d2 = dissipated_energy(BoundPotential{m, f}, e, g, 0.006);
  CHECK(d2 == 2.0 * d1);

  // negative gamma gains energy
  CHECK(dissipated_energy(BoundPotential{m, f}, e, g, -0.004) < 0.0);

  // brute-force quadrature oracle for the loss itself
  const auto v = [&](double x) { return v_parabolic(he, f, x, true); };
  const double ref = 0.00575 * oracles::action(v, e, g.x1, g.x2, 2'000'000L);
  CHECK(dissipated_energy(BoundPotential{m, f}, e, g, 0.00575) ==
        Catch::Approx(ref).epsilon(1e-8));
}

TEST_CASE("gamma = 0 reproduces the frictionless pipeline bit for bit") {
  const PotentialModel m = screened_parabolic();
  for (FrictionMode mode : {FrictionMode::TotalShift, FrictionMode::Cumulative}) {
    for (double f : {0.05, 0.09}) {
      const double e = tunneling_energy(he, f, Coordinates::Parabolic);
      const BarrierGeometry g = find_turning_points(m, f, e);
      const TimeResult base = evaluate_times(BoundPotential{m, f}, e, g);
      const TimeResult diss = dissipative_dwell_time(m, f, e, FrictionSpec{0.0, mode});
      CHECK(std::abs(diss.tau_d - base.tau_d) <= 1e-12 * base.tau_d);
      CHECK(std::abs(diss.t2 - base.t2) <= 1e-12 * base.t2);
      CHECK(diss.geometry.x1 == Catch::Approx(g.x1).margin(1e-12));
      CHECK(diss.geometry.x2 == Catch::Approx(g.x2).margin(1e-12));
      CHECK(diss.delta_e == 0.0);
    }
  }
}

TEST_CASE("positive friction raises and widens the effective barrier (total shift)") {
  const PotentialModel m = screened_parabolic();
  const double f = 0.06;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  const BarrierGeometry g0 = find_turning_points(m, f, e);
  const BoundPotential c{m, f};

  const FrictionSpec spec{0.01, FrictionMode::TotalShift};
  const double de = dissipated_energy(c, e, g0, spec.gamma);
  const auto eb = effective_geometry_and_k(c, f, e, g0, spec,
                                           dissipative_scan_options(m, f, e, de));
  CHECK(eb.delta_e == Catch::Approx(de).epsilon(1e-12));

  // k_eff >= k pointwise on the shared domain
  for (int i = 1; i < 40; ++i) {
    const double x = g0.x1 + (g0.x2 - g0.x1) * i / 40.0;
    const double keff = std::sqrt(2.0 * (eb.curve.value(x) - e));
    const double k = std::sqrt(2.0 * (c.value(x) - e));
    CHECK(keff >= k);
  }
  // re-solved width grows
  CHECK(eb.geometry.x1 < g0.x1);
  CHECK(eb.geometry.x2 > g0.x2);
  CHECK(eb.geometry.width() > g0.width());
}

TEST_CASE("effective turning points match an independent scan of V_eff - E") {
  const PotentialModel m = screened_parabolic();
  const double f = 0.06;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  const BarrierGeometry g0 = find_turning_points(m, f, e);
  const BoundPotential c{m, f};

  for (double gamma : {0.01, -0.01}) {
    const FrictionSpec spec{gamma, FrictionMode::TotalShift};
    const double de = dissipated_energy(c, e, g0, gamma);
    const auto eb = effective_geometry_and_k(c, f, e, g0, spec,
                                             dissipative_scan_options(m, f, e, de));
    // oracle: scan V + de - e on a fine linear grid
    double ox1 = 0, ox2 = 0;
    bool found1 = false;
    const double lo = 0.3, hi = 120.0;
    const long n = 4'000'000L;
    double xp = lo, vp = c.value(lo) + de - e;
    for (long i = 1; i <= n; ++i) {
      const double x = lo + (hi - lo) * i / n;
      const double v = c.value(x) + de - e;
      if (!found1 && vp < 0 && v > 0) {
        ox1 = xp - vp * (x - xp) / (v - vp);
        found1 = true;
      } else if (found1 && vp > 0 && v < 0) {
        ox2 = xp - vp * (x - xp) / (v - vp);
        break;
      }
      xp = x;
      vp = v;
    }
    CHECK(eb.geometry.x1 == Catch::Approx(ox1).margin(1e-6));
    CHECK(eb.geometry.x2 == Catch::Approx(ox2).margin(1e-6));
  }
}

TEST_CASE("cumulative mode accrues the loss from the entrance point") {
  const PotentialModel m = screened_parabolic();
  const double f = 0.07;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  const BarrierGeometry g0 = find_turning_points(m, f, e);

  const TimeResult plus = dissipative_dwell_time(m, f, e, FrictionSpec{0.00575, FrictionMode::Cumulative});
  const TimeResult minus = dissipative_dwell_time(m, f, e, FrictionSpec{-0.005, FrictionMode::Cumulative});

  // no loss has accrued at the entrance: x1 stays put, only the exit moves
  CHECK(plus.geometry.x1 == Catch::Approx(g0.x1).margin(1e-9));
  CHECK(minus.geometry.x1 == Catch::Approx(g0.x1).margin(1e-9));
  CHECK(plus.geometry.x2 > g0.x2);
  CHECK(minus.geometry.x2 < g0.x2);
}

TEST_CASE("dwell time decreases monotonically with gamma") {
  const PotentialModel m = screened_parabolic();
  for (FrictionMode mode : {FrictionMode::TotalShift, FrictionMode::Cumulative}) {
    const double f = 0.08;
    const double e = tunneling_energy(he, f, Coordinates::Parabolic);
    double prev = std::numeric_limits<double>::infinity();
    for (double gamma : {-0.01, -0.005, 0.0, 0.00575, 0.01}) {
      const TimeResult r = dissipative_dwell_time(m, f, e, FrictionSpec{gamma, mode});
      CHECK(r.tau_d < prev);
      prev = r.tau_d;
    }
  }
}

TEST_CASE("strong energy gain lifts the electron over the barrier") {
  const PotentialModel m = screened_parabolic();
  const double f = 0.04;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  CHECK_THROWS_AS((dissipative_dwell_time(m, f, e, FrictionSpec{-0.01, FrictionMode::TotalShift})),
                  NoBarrierError);
}

TEST_CASE("reciprocal identity holds on dissipative results") {
  const PotentialModel m = screened_parabolic();
  const double f = 0.07;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  for (double gamma : {-0.005, 0.00575}) {
    const TimeResult r = dissipative_dwell_time(m, f, e, FrictionSpec{gamma, FrictionMode::TotalShift});
    CHECK(1.0 / r.tau_dt + 1.0 / r.tau_dr == Catch::Approx(1.0 / r.tau_d).epsilon(1e-12));
    CHECK(r.gamma == gamma);
    CHECK(r.tau_dt >= r.tau_d);
    CHECK(r.tau_dr >= r.tau_d);
  }
}

TEST_CASE("energy loss shortens dwell, energy gain stretches it") {
  const PotentialModel m = screened_parabolic();
  const double f = 0.07;
  const double e = tunneling_energy(he, f, Coordinates::Parabolic);
  const BarrierGeometry g = find_turning_points(m, f, e);
  const double tau0 = dwell_time(m, f, e, g);
  const TimeResult loss = dissipative_dwell_time(m, f, e, FrictionSpec{0.00575, FrictionMode::TotalShift});
  const TimeResult gain = dissipative_dwell_time(m, f, e, FrictionSpec{-0.00575, FrictionMode::TotalShift});
  CHECK(loss.tau_d < tau0);
  CHECK(gain.tau_d > tau0);
  CHECK(loss.delta_e > 0.0);
  CHECK(gain.delta_e < 0.0);
}
