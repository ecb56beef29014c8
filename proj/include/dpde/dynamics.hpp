#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dpde/controls.hpp"
#include "dpde/grid.hpp"

namespace dpde {

/// GrowingSingle: r_t = s, s_t = Lap_r s, s(pi) = u, s_theta(0) = 0.
/// StaticSingle: as above but the operator uses the frozen unit circle.
/// GrowingDouble: r_t = s_L + s_R; s_L as in GrowingSingle, s_R mirrored
/// (Dirichlet at 0, Neumann at pi).
enum class SimMode { GrowingSingle, StaticSingle, GrowingDouble };

const char* to_string(SimMode mode);

struct CoupledState {
  double t = 0.0;
  Field r;
  Field s;  // s_L in double mode
  std::optional<Field> s_right;
};

/// Boundary values applied after a step: `value` at theta = pi for s,
/// `right` at theta = 0 for s_R (double mode only).
struct BoundaryControl {
  double value = 0.0;
  double right = 0.0;
};

using Profile = std::function<double(double theta)>;

Profile constant_profile(double value);

struct SimConfig {
  SimMode mode = SimMode::GrowingSingle;
  int n_cells = 100;
  double t_final = 8.0;
  double dt_safety = 0.9;
  double snapshot_every = 0.5;
  Profile initial_r = constant_profile(1.0);
  Profile initial_s = constant_profile(0.0);
  Profile initial_s_right = constant_profile(0.0);

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

struct Trajectory {
  SimConfig config;
  std::vector<CoupledState> snapshots;

  const CoupledState& initial() const { return snapshots.front(); }
  const CoupledState& final() const { return snapshots.back(); }
  const GridPtr& grid() const { return snapshots.front().r.grid_ptr(); }
  /// Snapshot within 1e-9 of t, else MissingSnapshot.
  const CoupledState& at(double t) const;
};

/// dt_safety * dtheta^2 / 2 * min g (g = 1 in static mode). Throws NonPositiveRadius.
double stable_dt(const CoupledState& state, double dt_safety, SimMode mode = SimMode::GrowingSingle);

/// One simultaneous forward-Euler step of r and s from the same time level,
/// followed by the boundary conditions. Throws UnstableStep if dt exceeds
/// stable_dt(state, 1, mode) and NonPositiveRadius if the new radius degenerates.
CoupledState step(const CoupledState& state, double dt, BoundaryControl u, SimMode mode);

CoupledState initial_state(const SimConfig& config);

/// Integrates config.initial state to config.t_final. `schedules` holds one
/// control (two in double mode: left then right). Throws ConfigError on a
/// schedule-count mismatch and propagates step errors stamped with the time.
Trajectory simulate(const SimConfig& config, std::span<const ControlSchedule> schedules);

/// Same, but starting from an explicit state (its time must be 0).
Trajectory simulate(const SimConfig& config, const CoupledState& initial, std::span<const ControlSchedule> schedules);

}  // namespace dpde
