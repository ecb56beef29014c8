#include "dpde/controls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "dpde/errors.hpp"

namespace dpde {

namespace {

constexpr int kPanels = 32;
// exp(-745) underflows; beyond this exponent the bump and all its derivatives are zero.
constexpr double kUnderflowExponent = 740.0;

template <class F>
double composite_gauss(F&& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss<double, 15>;
  const double h = (b - a) / kPanels;
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p) sum += Rule::integrate(f, a + p * h, a + (p + 1) * h);
  return sum;
}

}  // namespace

GevreyStep::GevreyStep(double sigma, double duration, int max_order)
    : sigma_(sigma), duration_(duration), max_order_(max_order) {
  if (!(sigma >= 1.0 && sigma <= 3.0)) throw InvalidArgument("Gevrey exponent must lie in [1, 3]");
  if (!(duration > 0.0)) throw InvalidArgument("Gevrey step duration must be positive");
  if (max_order < 1) throw InvalidArgument("Gevrey step needs max_order >= 1");
  half_mass_ = composite_gauss([this](double x) { return bump(x); }, 0.0, 0.5);
}

double GevreyStep::bump(double x) const {
  const double w = x * (1.0 - x);
  if (!(w > 0.0)) return 0.0;
  const double e = std::pow(w, -sigma_);
  return e > kUnderflowExponent ? 0.0 : std::exp(-e);
}

double GevreyStep::primitive(double tau) const {
  auto f = [this](double x) { return bump(x); };
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 2.0 * half_mass_;
  // Integrate over the shorter side so y(1/2 + a) + y(1/2 - a) = 1 holds to round-off.
  if (tau <= 0.5) return composite_gauss(f, 0.0, tau);
  return 2.0 * half_mass_ - composite_gauss(f, tau, 1.0);
}

double GevreyStep::value(double t) const { return primitive(t / duration_) / (2.0 * half_mass_); }

Jet gevrey_jet(const GevreyStep& step, double t) {
  const double T = step.duration();
  if (!(t >= 0.0 && t <= T)) {
    throw InvalidArgument("Gevrey jet requested at t=" + std::to_string(t) + " outside [0, " + std::to_string(T) + "]");
  }
  const int K = step.max_order();
  const double mass = 2.0 * step.half_mass_;
  const double tau = t / T;

  Jet y = Jet::constant(step.primitive(tau) / mass, K);

  // Derivative of y is bump(t/T) / (T * mass); expand the bump as a jet in t.
  const Jet x = Jet::variable(tau, K - 1, 1.0 / T);
  const Jet w = x * (1.0 - x);
  if (!(w[0] > 0.0) || std::pow(w[0], -step.sigma()) > kUnderflowExponent) return y;
  const Jet bump = exp(-pow(w, -step.sigma()));
  for (int k = 1; k <= K; ++k) y[k] = bump[k - 1] / (k * T * mass);
  return y;
}

double flat_boundary_value(double target, const GevreyStep& step, double t) {
  if (target == 0.0) return 0.0;
  if (t >= step.duration()) return target;
  const Jet y = gevrey_jet(step, std::max(t, 0.0));
  // y^(k) pi^(2k) / (2k)! = k! c_k pi^(2k) / (2k)!
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double weight = 1.0;  // k! pi^(2k) / (2k)!
  double sum = y[0];
  for (int k = 1; k <= y.order(); ++k) {
    weight *= k * pi2 / ((2.0 * k - 1.0) * (2.0 * k));
    sum += weight * y[k];
  }
  return target * sum;
}

ControlSchedule::ControlSchedule(Variant v) : v_(std::move(v)) {
  if (const auto* s = std::get_if<WindowedSine>(&v_)) {
    if (!std::isfinite(s->amplitude)) throw InvalidArgument("windowed sine amplitude must be finite");
    if (!(s->omega > 0.0)) throw InvalidArgument("windowed sine omega must be positive");
  } else if (const auto* tab = std::get_if<TabulatedControl>(&v_)) {
    if (tab->times.size() != tab->values.size() || tab->times.size() < 2) {
      throw InvalidArgument("tabulated control needs matching times/values with at least two rows");
    }
    for (std::size_t i = 1; i < tab->times.size(); ++i) {
      if (!(tab->times[i] > tab->times[i - 1])) throw InvalidArgument("tabulated times must be strictly increasing");
    }
    if (tab->times.front() > 0.0) throw InvalidArgument("tabulated control must start at or before t=0");
    for (double u : tab->values) {
      if (!std::isfinite(u)) throw InvalidArgument("tabulated control values must be finite");
    }
  } else if (const auto* c = std::get_if<ConstantControl>(&v_)) {
    if (!std::isfinite(c->value)) throw InvalidArgument("constant control must be finite");
  }
}

ControlSchedule ControlSchedule::constant(double value) { return ControlSchedule(ConstantControl{value}); }

ControlSchedule ControlSchedule::tabulated(std::vector<double> times, std::vector<double> values) {
  return ControlSchedule(TabulatedControl{std::move(times), std::move(values)});
}

ControlSchedule ControlSchedule::flat_series(double target, const GevreyStep& step) {
  return ControlSchedule(FlatSeriesControl{target, step});
}

ControlSchedule ControlSchedule::u1() { return constant(1.0); }

ControlSchedule ControlSchedule::u2() { return ControlSchedule(WindowedSine{0.5, 2.0 * std::numbers::pi / 5.0, 5.0}); }

// Zero on (2.5, 5] as well: the continuous extension, since the sine vanishes at 2.5.
ControlSchedule ControlSchedule::u3() { return ControlSchedule(WindowedSine{0.2, 2.0 * std::numbers::pi / 5.0, 2.5}); }

namespace {

struct Evaluator {
  double t;

  double operator()(const ConstantControl& c) const { return c.value; }

  double operator()(const WindowedSine& s) const { return t <= s.active_until ? s.amplitude * std::sin(s.omega * t) : 0.0; }

  double operator()(const TabulatedControl& tab) const {
    if (t < tab.times.front() || t > tab.times.back()) {
      throw OutOfTableRange("control table covers [" + std::to_string(tab.times.front()) + ", " +
                            std::to_string(tab.times.back()) + "], requested t=" + std::to_string(t));
    }
    const auto it = std::upper_bound(tab.times.begin(), tab.times.end(), t);
    if (it == tab.times.end()) return tab.values.back();
    const std::size_t hi = static_cast<std::size_t>(it - tab.times.begin());
    const std::size_t lo = hi - 1;
    if (t == tab.times[lo]) return tab.values[lo];
    const double a = (t - tab.times[lo]) / (tab.times[hi] - tab.times[lo]);
    return (1.0 - a) * tab.values[lo] + a * tab.values[hi];
  }

  double operator()(const FlatSeriesControl& f) const { return flat_boundary_value(f.target, f.step, t); }
};

}  // namespace

double ControlSchedule::operator()(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("control evaluated at negative time " + std::to_string(t));
  return std::visit(Evaluator{t}, v_);
}

ControlSchedule tabulate(const ControlSchedule& u, double t_end, int samples) {
  if (samples < 2) throw InvalidArgument("tabulation needs at least two samples");
  std::vector<double> times(samples), values(samples);
  for (int i = 0; i < samples; ++i) {
    times[i] = (i + 1 == samples) ? t_end : t_end * i / (samples - 1);
    values[i] = u(times[i]);
  }
  return ControlSchedule::tabulated(std::move(times), std::move(values));
}

}  // namespace dpde
