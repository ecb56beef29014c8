#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dpde/dynamics.hpp"
#include "dpde/errors.hpp"
#include "dpde/geometry.hpp"
#include "oracles.hpp"

using namespace dpde;
using std::numbers::pi;

namespace {

CoupledState state_of(const GridPtr& g, Profile r, Profile s) {
  return {0.0, Field::sample(g, r), Field::sample(g, s), std::nullopt};
}

SimConfig config_of(SimMode mode, int n, double t_final) {
  SimConfig c;
  c.mode = mode;
  c.n_cells = n;
  c.t_final = t_final;
  return c;
}

}  // namespace

TEST_CASE("stable time step") {
  auto g = make_grid(100);
  const double h = pi / 100;
  const auto one = state_of(g, constant_profile(1.0), constant_profile(0.0));
  CHECK(stable_dt(one, 0.9) == doctest::Approx(0.9 * h * h / 2).epsilon(1e-14));
  const auto two = state_of(g, constant_profile(2.0), constant_profile(0.0));
  CHECK(stable_dt(two, 0.9) == doctest::Approx(4 * stable_dt(one, 0.9)).epsilon(1e-14));
  CHECK(stable_dt(two, 0.9, SimMode::StaticSingle) == doctest::Approx(stable_dt(one, 0.9)).epsilon(1e-14));

  const auto bent = state_of(g, [](double t) { return 2 + std::cos(t); }, constant_profile(0.0));
  const MetricData m = metric(bent.r);
  double min_g = m.g[0];
  for (std::size_t i = 0; i < m.g.size(); ++i) min_g = std::min(min_g, m.g[i]);
  CHECK(stable_dt(bent, 0.9) == doctest::Approx(0.9 * h * h / 2 * min_g).epsilon(1e-14));
}

TEST_CASE("single steps") {
  auto g = make_grid(50);
  const auto rest = state_of(g, constant_profile(1.0), constant_profile(0.0));
  const double dt = stable_dt(rest, 0.9);
  const auto same = step(rest, dt, {0.0, 0.0}, SimMode::GrowingSingle);
  CHECK(same.t == doctest::Approx(dt));
  CHECK(max_norm(same.r - rest.r) == 0.0);
  CHECK(max_norm(same.s) == 0.0);

  const auto kicked = step(rest, dt, {1.0, 0.0}, SimMode::StaticSingle);
  CHECK(kicked.s.back() == 1.0);
  for (std::size_t i = 0; i + 1 < kicked.s.size(); ++i) CHECK(kicked.s[i] == 0.0);
  CHECK(max_norm(kicked.r - rest.r) == 0.0);
  const auto again = step(kicked, dt, {1.0, 0.0}, SimMode::StaticSingle);
  CHECK(again.r.back() > 1.0);
  CHECK(again.r[10] == 1.0);

  CHECK_THROWS_AS(step(rest, 2.0 * stable_dt(rest, 1.0), {0.0, 0.0}, SimMode::GrowingSingle), UnstableStep);
}

TEST_CASE("double source keeps mirror symmetry step by step") {
  auto g = make_grid(40);
  CoupledState st{0.0, Field::sample(g, [](double t) { return 1.0 + 0.1 * std::cos(2 * t); }),
                  Field::sample(g, [](double t) { return 0.2 * std::exp(std::cos(t)); }),
                  Field::sample(g, [](double t) { return 0.2 * std::exp(-std::cos(t)); })};
  const std::size_t n = g->size() - 1;
  for (int k = 0; k < 200; ++k) {
    const double u = 0.3 * std::sin(0.01 * k);
    st = step(st, stable_dt(st, 0.9), {u, u}, SimMode::GrowingDouble);
    double asym = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      asym = std::max(asym, std::abs(st.r[i] - st.r[n - i]));
      asym = std::max(asym, std::abs(st.s[i] - (*st.s_right)[n - i]));
    }
    CHECK(asym <= 1e-13);
  }
}

TEST_CASE("zero control is a fixed point") {
  const auto traj = simulate(config_of(SimMode::GrowingSingle, 100, 10.0), std::vector{ControlSchedule::constant(0.0)});
  CHECK(max_norm(traj.final().r - Field::constant(traj.grid(), 1.0)) == 0.0);
  CHECK(max_norm(traj.final().s) == 0.0);
}

TEST_CASE("snapshots") {
  const auto traj = simulate(config_of(SimMode::GrowingSingle, 20, 2.2), std::vector{ControlSchedule::u1()});
  std::vector<double> times;
  for (const auto& s : traj.snapshots) times.push_back(s.t);
  const std::vector<double> expected{0.0, 0.5, 1.0, 1.5, 2.0, 2.2};
  REQUIRE(times.size() == expected.size());
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(times[k] == doctest::Approx(expected[k]).epsilon(1e-14));
  CHECK(traj.at(1.5).t == doctest::Approx(1.5));
  CHECK_THROWS_AS(traj.at(1.7), MissingSnapshot);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(simulate(config_of(SimMode::GrowingSingle, 20, 1.0), std::vector<ControlSchedule>{}), ConfigError);
  CHECK_THROWS_AS(simulate(config_of(SimMode::GrowingDouble, 20, 1.0), std::vector{ControlSchedule::u1()}),
                  ConfigError);
  auto bad = config_of(SimMode::GrowingSingle, 20, -1.0);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = config_of(SimMode::GrowingSingle, 20, 1.0);
  bad.dt_safety = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.dt_safety = 0.9;
  bad.n_cells = 4;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("degenerating radius is reported with its time") {
  try {
    simulate(config_of(SimMode::GrowingSingle, 20, 10.0), std::vector{ControlSchedule::constant(-2.0)});
    FAIL("expected NonPositiveRadius");
  } catch (const NonPositiveRadius& e) {
    CHECK(std::isfinite(e.time()));
    CHECK(e.time() > 0.0);
    CHECK(e.time() < 10.0);
    CHECK(e.value() <= 0.0);
  }
}

TEST_CASE("static run matches the eigenfunction series") {
  const auto traj = simulate(config_of(SimMode::StaticSingle, 200, 0.5), std::vector{ControlSchedule::u1()});
  const auto& fin = traj.final();
  double err_s = 0.0, err_r = 0.0;
  for (std::size_t i = 0; i < fin.s.size(); ++i) {
    const double th = traj.grid()->theta(i);
    err_s = std::max(err_s, std::abs(fin.s[i] - oracle::static_signal(0.5, th)));
    err_r = std::max(err_r, std::abs(fin.r[i] - oracle::static_radius(0.5, th)));
  }
  CHECK(err_s <= 1e-3);
  CHECK(err_r <= 1e-3);
}

TEST_CASE("static run converges at second order") {
  std::vector<double> errs;
  for (int n : {25, 50, 100}) {
    const auto traj = simulate(config_of(SimMode::StaticSingle, n, 1.0), std::vector{ControlSchedule::u1()});
    double e = 0.0;
    for (std::size_t i = 0; i < traj.final().s.size(); ++i) {
      e = std::max(e, std::abs(traj.final().s[i] - oracle::static_signal(1.0, traj.grid()->theta(i))));
    }
    errs.push_back(e);
  }
  CHECK(oracle::log2_ratio(errs[0], errs[1]) > 1.8);
  CHECK(oracle::log2_ratio(errs[1], errs[2]) > 1.8);
}

TEST_CASE("discrete maximum principle") {
  SUBCASE("u1") {
    const auto traj = simulate(config_of(SimMode::GrowingSingle, 100, 8.0), std::vector{ControlSchedule::u1()});
    for (const auto& snap : traj.snapshots) {
      CHECK(min_value(snap.s) >= -1e-10);
      CHECK(max_value(snap.s) <= 1.0 + 1e-10);
    }
  }
  SUBCASE("u2") {
    const auto traj = simulate(config_of(SimMode::GrowingSingle, 100, 10.0), std::vector{ControlSchedule::u2()});
    for (const auto& snap : traj.snapshots) {
      CHECK(min_value(snap.s) >= -0.5 - 1e-10);
      CHECK(max_value(snap.s) <= 0.5 + 1e-10);
    }
  }
}

TEST_CASE("explicit initial state") {
  auto cfg = config_of(SimMode::GrowingSingle, 20, 1.0);
  auto init = initial_state(cfg);
  CHECK(init.t == 0.0);
  CHECK(!init.s_right);
  const auto a = simulate(cfg, std::vector{ControlSchedule::u1()});
  const auto b = simulate(cfg, init, std::vector{ControlSchedule::u1()});
  CHECK(max_norm(a.final().r - b.final().r) == 0.0);
  init.t = 0.3;
  CHECK_THROWS(simulate(cfg, init, std::vector{ControlSchedule::u1()}));
}
