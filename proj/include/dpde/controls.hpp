#pragma once

#include <variant>
#include <vector>

#include "dpde/jet.hpp"

namespace dpde {

/// Gevrey-class smooth step y(t) = Phi(t/T) / Phi(1), where
/// Phi(tau) = integral_0^tau exp(-1 / (x (1 - x))^sigma) dx.
/// y rises from 0 to 1 on [0, T] with every derivative vanishing at both ends.
class GevreyStep {
 public:
  static constexpr double kDefaultSigma = 1.65;

  /// sigma in [1, 3], duration > 0, max_order >= 1.
  GevreyStep(double sigma, double duration, int max_order);

  double sigma() const { return sigma_; }
  double duration() const { return duration_; }
  int max_order() const { return max_order_; }

  /// y(t) only; cheaper than a full jet. Clamps outside [0, T].
  double value(double t) const;

 private:
  friend Jet gevrey_jet(const GevreyStep& step, double t);

  double primitive(double tau) const;
  double bump(double x) const;

  double sigma_;
  double duration_;
  int max_order_;
  double half_mass_;  // Phi(1/2)
};

/// Taylor jet of y about t, through order step.max_order(). Throws InvalidArgument
/// for t outside [0, T].
Jet gevrey_jet(const GevreyStep& step, double t);

/// Boundary value at theta = pi of the flat heat-equation parametrisation with flat
/// output c*y: c * sum_{k=0..K} y^(k)(t) pi^(2k) / (2k)!. Holds c after T.
double flat_boundary_value(double target, const GevreyStep& step, double t);

struct ConstantControl {
  double value = 0.0;
};

/// amplitude * sin(omega t) on [0, active_until], zero afterwards.
struct WindowedSine {
  double amplitude = 0.0;
  double omega = 1.0;
  double active_until = 0.0;
};

/// Piecewise-linear interpolation through (times[i], values[i]).
struct TabulatedControl {
  std::vector<double> times;
  std::vector<double> values;
};

/// Flatness-based control evaluated from the series, see flat_boundary_value.
struct FlatSeriesControl {
  double target = 0.0;
  GevreyStep step{GevreyStep::kDefaultSigma, 1.0, 4};
};

/// Open-loop boundary control u(t).
class ControlSchedule {
 public:
  using Variant = std::variant<ConstantControl, WindowedSine, TabulatedControl, FlatSeriesControl>;

  /// Validates the variant's invariants; throws InvalidArgument.
  ControlSchedule(Variant v);

  static ControlSchedule constant(double value);
  static ControlSchedule tabulated(std::vector<double> times, std::vector<double> values);
  static ControlSchedule flat_series(double target, const GevreyStep& step);

  // The three controls of the shape experiments.
  static ControlSchedule u1();
  static ControlSchedule u2();
  static ControlSchedule u3();

  /// Throws InvalidArgument for t < 0 and OutOfTableRange outside a table.
  double operator()(double t) const;

  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

inline double eval_schedule(const ControlSchedule& u, double t) { return u(t); }

/// Samples a schedule on `samples` equally spaced times covering [0, t_end].
ControlSchedule tabulate(const ControlSchedule& u, double t_end, int samples);

}  // namespace dpde
