#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dpde/controls.hpp"
#include "dpde/dynamics.hpp"
#include "dpde/grid.hpp"

namespace dpde {

/// phi_t = f phi'' + g phi' + h phi on [0, pi], phi(pi) = u, phi'(0) = 0.
/// Only the constant-coefficient instance (f = 1, g = h = 0) is planned exactly.
struct GeneralizedHeatProblem {
  Field f;
  Field g;
  Field h;

  /// Throws InvalidArgument unless f > 0 everywhere; MismatchedGrids on mixed grids.
  GeneralizedHeatProblem(Field f, Field g, Field h);
  static GeneralizedHeatProblem heat(const GridPtr& grid);

  /// Right-hand side f phi'' + g phi' + h phi, mirror ghost at theta = 0 and
  /// one-sided stencils at theta = pi.
  Field rhs(const Field& phi) const;
};

struct FlatPlan {
  double target = 0.0;
  double horizon = 0.0;
  int truncation = 0;
  double sigma = GevreyStep::kDefaultSigma;
  ControlSchedule control = ControlSchedule::constant(0.0);  ///< tabulated on [0, horizon]

  GevreyStep step() const { return {sigma, horizon, truncation}; }
  /// The same control evaluated from the series instead of the table.
  ControlSchedule series_control() const { return ControlSchedule::flat_series(target, step()); }
};

/// Motion planning of the heat equation from 0 to the constant c over [0, T]
/// with flat output y = c * (Gevrey step). Throws SeriesDivergence when the
/// last retained term exceeds 1e-3 |c| at a sample; InvalidArgument for T <= 0,
/// K < 4 or samples < 2.
FlatPlan flatness_control(double target, double horizon, int truncation, double sigma, int samples);

/// The truncated series phi(t, .) = c sum_k y^(k)(t) theta^(2k) / (2k)! on a grid.
Field flatness_field(const FlatPlan& plan, double t, const GridPtr& grid);

/// Truncation remainder of the series at (t, theta): c y^(K+1)(t) theta^(2K) / (2K)!.
double flatness_tail(const FlatPlan& plan, double t, double theta);

struct OptimizeOptions {
  int knots = 20;
  double w_shape = 1.0;
  double w_signal = 1.0;
  double w_reg = 1e-4;
  double tol = 1e-8;
  int max_iters = 200;
  double dt_safety = 0.9;
  double fd_step = 1e-6;
  /// Starting knot values; empty means u = 0.
  std::vector<double> initial_knots;
};

struct PlanReport {
  int iterations = 0;
  std::vector<double> cost_history;
  double terminal_shape_error = 0.0;   ///< ||r(T) - r1||_L2
  double terminal_signal_error = 0.0;  ///< ||s(T)||_L2
  double gradient_norm = 0.0;
  bool converged = false;
  std::string stop_reason;
  std::vector<double> knot_times;
  std::vector<double> knots;
  ControlSchedule control = ControlSchedule::constant(0.0);
};

/// Piecewise-linear boundary control steering the growing single-source system
/// from (r0, s = 0) towards (r1, s = 0) at time T. Minimises
///   w_shape ||r(T) - r1||^2 + w_signal ||s(T)||^2 + w_reg ||u||^2
/// over knot values with finite-difference Jacobians and a damped Gauss-Newton
/// direction under a backtracking line search.
/// Throws SimulationFailure (with the knots) when an evaluated iterate degenerates,
/// NoDescent when the line search stalls before any stopping test holds.
PlanReport optimize_control(const Field& r0, const Field& r1, double horizon, const OptimizeOptions& options = {});

/// sup over snapshots of ||r(t) - reference(t)||_L2. Throws MismatchedGrids.
double tracking_error(const Trajectory& traj, const std::function<Field(double)>& reference);

}  // namespace dpde
