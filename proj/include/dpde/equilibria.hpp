#pragma once

#include <vector>

#include "dpde/dynamics.hpp"
#include "dpde/grid.hpp"

namespace dpde {

enum class EquilibriumFamily { Zero, Constant, Exponential };

struct EquilibriumProfile {
  Field s_e;
  double u_e = 0.0;  ///< s_e at theta = pi
  EquilibriumFamily family = EquilibriumFamily::Zero;
  double lambda = 0.0;
  /// d/dtheta s_e at theta = 0, from the closed form. Zero for admissible profiles.
  double neumann_defect = 0.0;
};

/// Nodal residual of the self-similar signal equation s s'' - (s')^2,
/// using the solver's stencils.
Field equilibrium_residual(const Field& s_e);

EquilibriumProfile zero_equilibrium(const GridPtr& grid);
EquilibriumProfile constant_equilibrium(double u_e, const GridPtr& grid);

/// s_e = u_e exp(lambda (theta - pi)); satisfies the Dirichlet condition but
/// only approximately the Neumann one (defect u_e lambda exp(-lambda pi)).
/// lambda = 0 yields the Constant family. Throws InvalidArgument for u_e <= 0.
EquilibriumProfile exponential_equilibrium(double u_e, double lambda, const GridPtr& grid);

/// r_e(t) = s_e * (t + r0_pi / u_e), the radius that grows as a pure dilation.
/// Throws InvalidArgument unless u_e > 0 and r0_pi > 0.
Field self_similar_radius(const EquilibriumProfile& profile, double r0_pi, double t);

struct ShapeRatio {
  std::vector<double> times;
  std::vector<Field> rho;   ///< r(t, .) / r(t, pi)
  double variation = 0.0;   ///< max over theta of (max_t rho - min_t rho) within the window
};

/// Shape ratio of every snapshot; the variation uses snapshots with t in
/// [window_begin, window_end]. Throws DegenerateBoundaryRadius if r(t, pi) <= 0.
ShapeRatio shape_ratio(const Trajectory& traj, double window_begin, double window_end);

}  // namespace dpde
