#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dpde/equilibria.hpp"
#include "dpde/errors.hpp"
#include "oracles.hpp"

using namespace dpde;
using std::numbers::pi;

namespace {

double interior_max(const Field& f) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

Trajectory self_similar_trajectory(const EquilibriumProfile& eq, double r0_pi, const std::vector<double>& times) {
  Trajectory traj;
  traj.config.t_final = times.back();
  for (double t : times) {
    traj.snapshots.push_back({t, self_similar_radius(eq, r0_pi, t), eq.s_e, std::nullopt});
  }
  return traj;
}

}  // namespace

TEST_CASE("constant and zero profiles") {
  auto g = make_grid(100);
  const auto c = constant_equilibrium(0.7, g);
  CHECK(c.family == EquilibriumFamily::Constant);
  CHECK(max_norm(equilibrium_residual(c.s_e)) == 0.0);
  const auto z = zero_equilibrium(g);
  CHECK(z.family == EquilibriumFamily::Zero);
  CHECK(max_norm(z.s_e) == 0.0);
  CHECK(max_norm(equilibrium_residual(z.s_e)) == 0.0);
}

TEST_CASE("residual of a polynomial") {
  auto g = make_grid(40);
  const Field res = equilibrium_residual(Field::sample(g, [](double t) { return t * t; }));
  for (std::size_t i = 1; i + 1 < res.size(); ++i) {
    const double th = g->theta(i);
    CHECK(res[i] == doctest::Approx(-2 * th * th).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("exponential family converges at second order") {
  std::vector<double> errs;
  for (int n : {100, 200, 400}) {
    const auto eq = exponential_equilibrium(1.0, 0.5, make_grid(n));
    CHECK(eq.family == EquilibriumFamily::Exponential);
    CHECK(eq.s_e.back() == 1.0);
    errs.push_back(interior_max(equilibrium_residual(eq.s_e)));
  }
  CHECK(oracle::log2_ratio(errs[0], errs[1]) >= 1.9);
  CHECK(oracle::log2_ratio(errs[1], errs[2]) >= 1.9);
  CHECK(errs[1] <= 1.0 * std::pow(pi / 200, 2));
}

TEST_CASE("Neumann defect") {
  auto g = make_grid(50);
  const auto flat = exponential_equilibrium(2.0, 0.0, g);
  CHECK(flat.family == EquilibriumFamily::Constant);
  CHECK(flat.neumann_defect == 0.0);
  CHECK(max_norm(flat.s_e - Field::constant(g, 2.0)) == 0.0);

  const auto two = exponential_equilibrium(1.0, 2.0, g);
  CHECK(two.neumann_defect == doctest::Approx(2 * std::exp(-2 * pi)));
  CHECK(two.neumann_defect == doctest::Approx(3.7e-3).epsilon(0.02));
  CHECK(exponential_equilibrium(1.0, 5.0, g).neumann_defect < two.neumann_defect);
  CHECK_THROWS_AS(exponential_equilibrium(0.0, 1.0, g), InvalidArgument);
}

TEST_CASE("self-similar radius") {
  auto g = make_grid(50);
  const auto eq = exponential_equilibrium(1.5, 0.8, g);
  const Field r0 = self_similar_radius(eq, 2.0, 0.0);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(r0[i] == doctest::Approx(eq.s_e[i] * 2.0 / 1.5));

  const auto c = constant_equilibrium(0.4, g);
  CHECK(max_norm(self_similar_radius(c, 1.0, 3.0) - Field::constant(g, 1.0 + 3 * 0.4)) <= 1e-15);
  CHECK_THROWS_AS(self_similar_radius(c, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(self_similar_radius(zero_equilibrium(g), 1.0, 1.0), InvalidArgument);

  const Field a = self_similar_radius(eq, 2.0, 0.0);
  const Field b = self_similar_radius(eq, 2.0, 7.0);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(a[i] / a.back() == doctest::Approx(b[i] / b.back()).epsilon(1e-15));
}

TEST_CASE("shape ratio") {
  auto g = make_grid(50);
  const auto eq = exponential_equilibrium(1.0, 0.5, g);
  const auto traj = self_similar_trajectory(eq, 1.0, {0.0, 1.0, 2.5, 4.0, 8.0});
  const ShapeRatio sr = shape_ratio(traj, 0.0, 8.0);
  CHECK(sr.times.size() == 5);
  CHECK(sr.variation <= 1e-12);

  SimConfig c;
  c.n_cells = 30;
  c.t_final = 3.0;
  const auto rest = simulate(c, std::vector{ControlSchedule::constant(0.0)});
  CHECK(shape_ratio(rest, 0.0, 3.0).variation == 0.0);

  Trajectory bad = traj;
  std::vector<double> r(g->size(), 1.0);
  r.back() = 0.0;
  bad.snapshots[1].r = Field(g, r);
  CHECK_THROWS_AS(shape_ratio(bad, 0.0, 8.0), DegenerateBoundaryRadius);
}
