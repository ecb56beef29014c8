#include "dpde/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dpde/errors.hpp"
#include "dpde/geometry.hpp"

namespace dpde {

Field equilibrium_residual(const Field& s_e) {
  const Field d1 = first_derivative(s_e);
  const Field d2 = second_derivative(s_e);
  std::vector<double> out(s_e.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s_e[i] * d2[i] - d1[i] * d1[i];
  return Field(s_e.grid_ptr(), std::move(out));
}

EquilibriumProfile zero_equilibrium(const GridPtr& grid) {
  return {Field::constant(grid, 0.0), 0.0, EquilibriumFamily::Zero, 0.0, 0.0};
}

EquilibriumProfile constant_equilibrium(double u_e, const GridPtr& grid) {
  if (u_e == 0.0) return zero_equilibrium(grid);
  return {Field::constant(grid, u_e), u_e, EquilibriumFamily::Constant, 0.0, 0.0};
}

EquilibriumProfile exponential_equilibrium(double u_e, double lambda, const GridPtr& grid) {
  if (!(u_e > 0.0)) throw InvalidArgument("exponential equilibrium needs u_e > 0");
  if (lambda == 0.0) return constant_equilibrium(u_e, grid);
  Field s = Field::sample(grid, [&](double theta) { return u_e * std::exp(lambda * (theta - std::numbers::pi)); });
  const double defect = u_e * lambda * std::exp(-lambda * std::numbers::pi);
  return {std::move(s), u_e, EquilibriumFamily::Exponential, lambda, defect};
}

Field self_similar_radius(const EquilibriumProfile& profile, double r0_pi, double t) {
  if (!(profile.u_e > 0.0)) throw InvalidArgument("self-similar growth needs u_e > 0");
  if (!(r0_pi > 0.0)) throw InvalidArgument("self-similar growth needs r0(pi) > 0");
  const double dilation = t + r0_pi / profile.u_e;
  std::vector<double> r(profile.s_e.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = profile.s_e[i] * dilation;
  return Field(profile.s_e.grid_ptr(), std::move(r));
}

ShapeRatio shape_ratio(const Trajectory& traj, double window_begin, double window_end) {
  ShapeRatio out;
  const std::size_t nodes = traj.grid()->size();
  std::vector<double> lo(nodes, std::numeric_limits<double>::infinity());
  std::vector<double> hi(nodes, -std::numeric_limits<double>::infinity());
  bool any = false;
  for (const auto& snap : traj.snapshots) {
    const double r_pi = snap.r.back();
    if (!(r_pi > 0.0)) {
      throw DegenerateBoundaryRadius("r(t, pi) = " + std::to_string(r_pi) + " at t=" + std::to_string(snap.t));
    }
    std::vector<double> rho(nodes);
    for (std::size_t i = 0; i < nodes; ++i) rho[i] = snap.r[i] / r_pi;
    if (snap.t >= window_begin - 1e-12 && snap.t <= window_end + 1e-12) {
      any = true;
      for (std::size_t i = 0; i < nodes; ++i) {
        lo[i] = std::min(lo[i], rho[i]);
        hi[i] = std::max(hi[i], rho[i]);
      }
    }
    out.times.push_back(snap.t);
    out.rho.emplace_back(snap.r.grid_ptr(), std::move(rho));
  }
  if (any) {
    for (std::size_t i = 0; i < nodes; ++i) out.variation = std::max(out.variation, hi[i] - lo[i]);
  }
  return out;
}

}  // namespace dpde
