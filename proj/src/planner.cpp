#include "dpde/planner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "dpde/errors.hpp"
#include "dpde/geometry.hpp"

namespace dpde {

GeneralizedHeatProblem::GeneralizedHeatProblem(Field f_, Field g_, Field h_)
    : f(std::move(f_)), g(std::move(g_)), h(std::move(h_)) {
  require_same_grid(f, g);
  require_same_grid(f, h);
  for (double x : f.values()) {
    if (!(x > 0.0)) throw InvalidArgument("diffusion coefficient must be positive");
  }
}

GeneralizedHeatProblem GeneralizedHeatProblem::heat(const GridPtr& grid) {
  return {Field::constant(grid, 1.0), Field::constant(grid, 0.0), Field::constant(grid, 0.0)};
}

Field GeneralizedHeatProblem::rhs(const Field& phi) const {
  require_same_grid(f, phi);
  const double dh = phi.grid().dtheta();
  std::vector<double> d1(phi.size()), d2(phi.size());
  first_derivative(phi.values(), dh, d1);
  second_derivative(phi.values(), dh, d2);
  d1[0] = 0.0;
  d2[0] = 2.0 * (phi[1] - phi[0]) / (dh * dh);
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * d2[i] + g[i] * d1[i] + h[i] * phi[i];
  return Field(phi.grid_ptr(), std::move(out));
}

namespace {

/// pi^(2K) / (2K)! without overflow.
double series_weight(int K, double theta) {
  double w = 1.0;
  for (int k = 1; k <= K; ++k) w *= theta * theta / ((2.0 * k - 1.0) * (2.0 * k));
  return w;
}

}  // namespace

FlatPlan flatness_control(double target, double horizon, int truncation, double sigma, int samples) {
  if (!(horizon > 0.0)) throw InvalidArgument("planning horizon must be positive");
  if (truncation < 4) throw InvalidArgument("series truncation must be at least 4");
  if (samples < 2) throw InvalidArgument("control table needs at least two samples");
  if (!std::isfinite(target)) throw InvalidArgument("target must be finite");

  const GevreyStep step(sigma, horizon, truncation);
  const double tail_weight = series_weight(truncation, std::numbers::pi);
  std::vector<double> times(samples), values(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = (i + 1 == samples) ? horizon : horizon * i / (samples - 1);
    times[i] = t;
    values[i] = flat_boundary_value(target, step, t);
    if (target != 0.0) {
      const double tail = std::abs(target * gevrey_jet(step, t).derivative(truncation)) * tail_weight;
      if (tail > 1e-3 * std::abs(target)) {
        throw SeriesDivergence("flat series tail " + std::to_string(tail) + " at t=" + std::to_string(t) +
                               " exceeds 1e-3 |c|; raise K or lower sigma");
      }
    }
  }
  return {target, horizon, truncation, sigma, ControlSchedule::tabulated(std::move(times), std::move(values))};
}

Field flatness_field(const FlatPlan& plan, double t, const GridPtr& grid) {
  if (!(t >= 0.0 && t <= plan.horizon)) throw InvalidArgument("flat field requested outside [0, T]");
  const Jet y = gevrey_jet(plan.step(), t);
  std::vector<double> derivs(plan.truncation + 1);
  for (int k = 0; k <= plan.truncation; ++k) derivs[k] = y.derivative(k);
  return Field::sample(grid, [&](double theta) {
    double term_weight = 1.0;  // theta^(2k) / (2k)!
    double sum = derivs[0];
    for (int k = 1; k <= plan.truncation; ++k) {
      term_weight *= theta * theta / ((2.0 * k - 1.0) * (2.0 * k));
      sum += derivs[k] * term_weight;
    }
    return plan.target * sum;
  });
}

double flatness_tail(const FlatPlan& plan, double t, double theta) {
  const GevreyStep longer(plan.sigma, plan.horizon, plan.truncation + 1);
  const Jet y = gevrey_jet(longer, t);
  return plan.target * y.derivative(plan.truncation + 1) * series_weight(plan.truncation, theta);
}

namespace {

class ControlProblem {
 public:
  ControlProblem(const Field& r0, const Field& r1, double horizon, const OptimizeOptions& opt)
      : r0_(r0), r1_(r1), horizon_(horizon), opt_(opt), times_(opt.knots), time_weights_(opt.knots) {
    require_same_grid(r0, r1);
    for (int j = 0; j < opt.knots; ++j) {
      times_[j] = (j + 1 == opt.knots) ? horizon : horizon * j / (opt.knots - 1);
      time_weights_[j] = horizon / (opt.knots - 1) * ((j == 0 || j + 1 == opt.knots) ? 0.5 : 1.0);
    }
    config_.mode = SimMode::GrowingSingle;
    config_.n_cells = r0.grid().n_cells();
    config_.t_final = horizon;
    config_.snapshot_every = horizon;
    config_.dt_safety = opt.dt_safety;
  }

  std::size_t residual_size() const { return 2 * r0_.size() + times_.size(); }
  const std::vector<double>& times() const { return times_; }

  ControlSchedule schedule(const std::vector<double>& knots) const { return ControlSchedule::tabulated(times_, knots); }

  struct Evaluation {
    Eigen::VectorXd residual;
    double cost = 0.0;
    double shape_error = 0.0;
    double signal_error = 0.0;
  };

  /// Throws NonPositiveRadius when the membrane degenerates.
  Evaluation evaluate(const std::vector<double>& knots) const {
    const ControlSchedule u = schedule(knots);
    const CoupledState start{0.0, r0_, Field::constant(r0_.grid_ptr(), 0.0), std::nullopt};
    const Trajectory traj = simulate(config_, start, std::span(&u, 1));
    const CoupledState& fin = traj.final();

    const std::size_t nodes = r0_.size();
    const double dh = r0_.grid().dtheta();
    Evaluation e;
    e.residual.resize(static_cast<Eigen::Index>(residual_size()));
    double shape2 = 0.0, signal2 = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double q = dh * ((i == 0 || i + 1 == nodes) ? 0.5 : 1.0);
      const double dr = fin.r[i] - r1_[i];
      shape2 += q * dr * dr;
      signal2 += q * fin.s[i] * fin.s[i];
      e.residual[i] = std::sqrt(opt_.w_shape * q) * dr;
      e.residual[nodes + i] = std::sqrt(opt_.w_signal * q) * fin.s[i];
    }
    for (std::size_t j = 0; j < times_.size(); ++j) {
      e.residual[2 * nodes + j] = std::sqrt(opt_.w_reg * time_weights_[j]) * knots[j];
    }
    e.cost = e.residual.squaredNorm();
    e.shape_error = std::sqrt(shape2);
    e.signal_error = std::sqrt(signal2);
    return e;
  }

  std::optional<Evaluation> try_evaluate(const std::vector<double>& knots) const {
    try {
      return evaluate(knots);
    } catch (const NonPositiveRadius&) {
      return std::nullopt;
    }
  }

  Evaluation evaluate_or_fail(const std::vector<double>& knots) const {
    try {
      return evaluate(knots);
    } catch (const NonPositiveRadius& e) {
      throw SimulationFailure(e.what(), knots);
    }
  }

 private:
  Field r0_;
  Field r1_;
  double horizon_;
  OptimizeOptions opt_;
  SimConfig config_;
  std::vector<double> times_;
  std::vector<double> time_weights_;
};

std::vector<double> axpy(const std::vector<double>& x, double a, const Eigen::VectorXd& d) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + a * d[static_cast<Eigen::Index>(j)];
  return out;
}

}  // namespace

PlanReport optimize_control(const Field& r0, const Field& r1, double horizon, const OptimizeOptions& opt) {
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (opt.knots < 4) throw InvalidArgument("need at least 4 knots");
  if (!(opt.w_shape > 0.0) || opt.w_signal < 0.0 || opt.w_reg < 0.0) {
    throw InvalidArgument("weights must be non-negative with w_shape > 0");
  }
  if (min_value(r0) <= 0.0 || min_value(r1) <= 0.0) throw InvalidArgument("radii must be positive");
  if (!opt.initial_knots.empty() && opt.initial_knots.size() != static_cast<std::size_t>(opt.knots)) {
    throw InvalidArgument("initial_knots must have one value per knot");
  }

  const ControlProblem problem(r0, r1, horizon, opt);
  const auto K = static_cast<Eigen::Index>(opt.knots);
  std::vector<double> knots = opt.initial_knots.empty() ? std::vector<double>(opt.knots, 0.0) : opt.initial_knots;

  PlanReport report;
  report.knot_times = problem.times();
  auto current = problem.evaluate_or_fail(knots);
  report.cost_history.push_back(current.cost);

  double damping = 1e-3;
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(problem.residual_size()), K);
  while (true) {
    if (current.cost <= opt.tol * opt.tol) {
      report.converged = true;
      report.stop_reason = "cost below tol^2";
      break;
    }
    for (Eigen::Index j = 0; j < K; ++j) {
      std::vector<double> probe = knots;
      const double step = opt.fd_step * std::max(1.0, std::abs(knots[j]));
      probe[j] += step;
      jac.col(j) = (problem.evaluate_or_fail(probe).residual - current.residual) / step;
    }
    const Eigen::VectorXd grad = 2.0 * jac.transpose() * current.residual;
    report.gradient_norm = grad.norm();
    if (report.gradient_norm <= opt.tol) {
      report.converged = true;
      report.stop_reason = "gradient norm below tol";
      break;
    }
    if (report.iterations >= opt.max_iters) {
      report.stop_reason = "iteration limit";
      break;
    }

    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd rhs = -(jac.transpose() * current.residual);
    bool accepted = false;
    // Damped Gauss-Newton first; steepest descent if that direction fails.
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      Eigen::VectorXd dir;
      if (attempt == 0) {
        Eigen::MatrixXd lhs = normal;
        lhs.diagonal() += damping * (normal.diagonal().array() + 1e-12).matrix();
        dir = lhs.ldlt().solve(rhs);
        if (!dir.allFinite() || grad.dot(dir) >= 0.0) continue;
      } else {
        dir = -grad / std::max(grad.norm(), 1e-300);
      }
      const double slope = grad.dot(dir);
      double alpha = attempt == 0 ? 1.0 : std::sqrt(current.cost) / std::max(grad.norm(), 1e-300);
      for (int tries = 0; tries < 40; ++tries, alpha *= 0.5) {
        const auto trial_knots = axpy(knots, alpha, dir);
        const auto trial = problem.try_evaluate(trial_knots);
        if (trial && trial->cost <= current.cost + 1e-4 * alpha * slope && trial->cost < current.cost) {
          knots = trial_knots;
          current = *trial;
          accepted = true;
          if (attempt == 0) damping = tries == 0 ? std::max(damping / 3.0, 1e-9) : damping * 2.0;
          break;
        }
      }
      if (!accepted && attempt == 0) damping *= 10.0;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "line search stalled after " << report.iterations << " iterations, J=" << current.cost
         << ", |grad J|=" << report.gradient_norm;
      throw NoDescent(os.str(), knots, current.cost);
    }
    ++report.iterations;
    report.cost_history.push_back(current.cost);
  }

  report.knots = knots;
  report.control = problem.schedule(knots);
  report.terminal_shape_error = current.shape_error;
  report.terminal_signal_error = current.signal_error;
  return report;
}

double tracking_error(const Trajectory& traj, const std::function<Field(double)>& reference) {
  double worst = 0.0;
  for (const auto& snap : traj.snapshots) {
    const Field ref = reference(snap.t);
    worst = std::max(worst, l2_norm(snap.r - ref));
  }
  return worst;
}

}  // namespace dpde
