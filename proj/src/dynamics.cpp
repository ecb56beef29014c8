#include "dpde/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpde/errors.hpp"
#include "dpde/geometry.hpp"

namespace dpde {

const char* to_string(SimMode mode) {
  switch (mode) {
    case SimMode::GrowingSingle: return "growing_single";
    case SimMode::StaticSingle: return "static_single";
    case SimMode::GrowingDouble: return "growing_double";
  }
  return "unknown";
}

Profile constant_profile(double value) {
  return [value](double) { return value; };
}

void SimConfig::validate() const {
  if (n_cells < Grid::kMinCells) {
    throw ConfigError("must be at least " + std::to_string(Grid::kMinCells), "n_cells");
  }
  if (!(t_final > 0.0)) throw ConfigError("must be positive", "t_final");
  if (!(snapshot_every > 0.0)) throw ConfigError("must be positive", "snapshot_every");
  if (!(dt_safety > 0.0 && dt_safety <= 1.0)) throw ConfigError("must lie in (0, 1]", "dt_safety");
  if (!initial_r || !initial_s) throw ConfigError("initial profiles must be set");
  if (mode == SimMode::GrowingDouble && !initial_s_right) throw ConfigError("double mode needs s0_right");
}

const CoupledState& Trajectory::at(double t) const {
  for (const auto& snap : snapshots) {
    if (std::abs(snap.t - t) <= 1e-9) return snap;
  }
  throw MissingSnapshot(t);
}

namespace {

/// Owns the scratch buffers of the explicit scheme; one instance per run.
class Stepper {
 public:
  Stepper(SimMode mode, const Grid& grid) : mode_(mode), h_(grid.dtheta()), lap_(grid.size()), lap_right_(grid.size()) {
    if (mode_ == SimMode::StaticSingle) flat_operator_coefficients(grid.size(), coeffs_);
  }

  /// Computes the operator for the current radius; returns the stability bound for dt_safety = 1.
  double prepare(std::span<const double> r) {
    if (mode_ != SimMode::StaticSingle) {
      operator_coefficients(r, h_, coeffs_);
    } else {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0)) throw NonPositiveRadius(std::numeric_limits<double>::quiet_NaN(), i * h_, i, r[i]);
      }
    }
    return 0.5 * h_ * h_ * coeffs_.min_g;
  }

  /// Forward Euler from the prepared level. t_new only stamps errors.
  void advance(std::vector<double>& r, std::vector<double>& s, std::vector<double>* s_right, double dt,
               BoundaryControl u, double t_new) {
    const std::size_t n = r.size() - 1;
    apply_operator(coeffs_, s, h_, NeumannSide::AtZero, lap_);
    if (s_right) {
      apply_operator(coeffs_, *s_right, h_, NeumannSide::AtPi, lap_right_);
      for (std::size_t i = 0; i <= n; ++i) r[i] += dt * (s[i] + (*s_right)[i]);
      for (std::size_t i = 1; i <= n; ++i) (*s_right)[i] += dt * lap_right_[i];
      (*s_right)[0] = u.right;
    } else {
      for (std::size_t i = 0; i <= n; ++i) r[i] += dt * s[i];
    }
    for (std::size_t i = 0; i < n; ++i) s[i] += dt * lap_[i];
    s[n] = u.value;
    for (std::size_t i = 0; i <= n; ++i) {
      if (!(r[i] > 0.0)) throw NonPositiveRadius(t_new, i * h_, i, r[i]);
    }
  }

 private:
  SimMode mode_;
  double h_;
  OperatorCoefficients coeffs_;
  std::vector<double> lap_;
  std::vector<double> lap_right_;
};

void check_state(const CoupledState& state, SimMode mode) {
  require_same_grid(state.r, state.s);
  if (mode == SimMode::GrowingDouble) {
    if (!state.s_right) throw InvalidArgument("double-source state needs s_right");
    require_same_grid(state.r, *state.s_right);
  }
}

CoupledState make_state(double t, const GridPtr& grid, std::vector<double> r, std::vector<double> s,
                        const std::vector<double>* s_right) {
  CoupledState out{t, Field(grid, std::move(r)), Field(grid, std::move(s)), std::nullopt};
  if (s_right) out.s_right = Field(grid, *s_right);
  return out;
}

}  // namespace

double stable_dt(const CoupledState& state, double dt_safety, SimMode mode) {
  Stepper stepper(mode, state.r.grid());
  return dt_safety * stepper.prepare(state.r.values());
}

CoupledState step(const CoupledState& state, double dt, BoundaryControl u, SimMode mode) {
  check_state(state, mode);
  Stepper stepper(mode, state.r.grid());
  const double limit = stepper.prepare(state.r.values());
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) throw UnstableStep(dt, limit);
  std::vector<double> r(state.r.values().begin(), state.r.values().end());
  std::vector<double> s(state.s.values().begin(), state.s.values().end());
  std::vector<double> s_right;
  const bool two = mode == SimMode::GrowingDouble;
  if (two) s_right.assign(state.s_right->values().begin(), state.s_right->values().end());
  stepper.advance(r, s, two ? &s_right : nullptr, dt, u, state.t + dt);
  return make_state(state.t + dt, state.r.grid_ptr(), std::move(r), std::move(s), two ? &s_right : nullptr);
}

CoupledState initial_state(const SimConfig& config) {
  config.validate();
  GridPtr grid = make_grid(config.n_cells);
  CoupledState state{0.0, Field::sample(grid, config.initial_r), Field::sample(grid, config.initial_s), std::nullopt};
  if (config.mode == SimMode::GrowingDouble) state.s_right = Field::sample(grid, config.initial_s_right);
  for (std::size_t i = 0; i < state.r.size(); ++i) {
    if (!(state.r[i] > 0.0)) throw NonPositiveRadius(0.0, grid->theta(i), i, state.r[i]);
  }
  return state;
}

Trajectory simulate(const SimConfig& config, std::span<const ControlSchedule> schedules) {
  return simulate(config, initial_state(config), schedules);
}

Trajectory simulate(const SimConfig& config, const CoupledState& initial, std::span<const ControlSchedule> schedules) {
  config.validate();
  const bool two = config.mode == SimMode::GrowingDouble;
  const std::size_t expected = two ? 2 : 1;
  if (schedules.size() != expected) {
    throw ConfigError(std::string(to_string(config.mode)) + " needs " + std::to_string(expected) + " control schedule(s), got " +
                      std::to_string(schedules.size()), "control");
  }
  check_state(initial, config.mode);
  if (initial.t != 0.0) throw InvalidArgument("simulation must start at t=0");

  const GridPtr& grid = initial.r.grid_ptr();
  Trajectory traj{config, {initial}};
  std::vector<double> r(initial.r.values().begin(), initial.r.values().end());
  std::vector<double> s(initial.s.values().begin(), initial.s.values().end());
  std::vector<double> s_right;
  if (two) s_right.assign(initial.s_right->values().begin(), initial.s_right->values().end());

  Stepper stepper(config.mode, *grid);
  double t = 0.0;
  long k = 1;
  auto next_target = [&] {
    const double t_k = k * config.snapshot_every;
    return t_k >= config.t_final * (1.0 - 1e-12) ? config.t_final : t_k;
  };
  double target = next_target();

  while (true) {
    double limit;
    try {
      limit = stepper.prepare(r);
    } catch (const NonPositiveRadius& e) {
      throw e.at_time(t);
    }
    double dt = config.dt_safety * limit;
    bool hit = false;
    if (t + dt >= target) {
      dt = target - t;
      hit = true;
    }
    const double t_new = hit ? target : t + dt;
    BoundaryControl u{schedules[0](t_new), two ? schedules[1](t_new) : 0.0};
    stepper.advance(r, s, two ? &s_right : nullptr, dt, u, t_new);
    t = t_new;
    if (hit) {
      traj.snapshots.push_back(make_state(t, grid, r, s, two ? &s_right : nullptr));
      if (t >= config.t_final) break;
      ++k;
      target = next_target();
    }
  }
  return traj;
}

}  // namespace dpde
