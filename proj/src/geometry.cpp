#include "dpde/geometry.hpp"

#include <algorithm>
#include <limits>

#include "dpde/errors.hpp"

namespace dpde {

void first_derivative(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size() - 1;
  const double inv_2h = 1.0 / (2.0 * h);
  for (std::size_t i = 1; i < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv_2h;
  out[0] = (3.0 * (f[1] - f[0]) - (f[2] - f[1])) * inv_2h;
  out[n] = (3.0 * (f[n] - f[n - 1]) - (f[n - 1] - f[n - 2])) * inv_2h;
}

void second_derivative(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size() - 1;
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t i = 1; i < n; ++i) out[i] = ((f[i + 1] + f[i - 1]) - 2.0 * f[i]) * inv_h2;
  out[0] = ((2.0 * (f[0] - f[1]) - 3.0 * (f[1] - f[2])) + (f[2] - f[3])) * inv_h2;
  out[n] = ((2.0 * (f[n] - f[n - 1]) - 3.0 * (f[n - 1] - f[n - 2])) + (f[n - 2] - f[n - 3])) * inv_h2;
}

Field first_derivative(const Field& f) {
  std::vector<double> out(f.size());
  first_derivative(f.values(), f.grid().dtheta(), out);
  return Field(f.grid_ptr(), std::move(out));
}

Field second_derivative(const Field& f) {
  std::vector<double> out(f.size());
  second_derivative(f.values(), f.grid().dtheta(), out);
  return Field(f.grid_ptr(), std::move(out));
}

namespace {

void require_positive(std::span<const double> r, double h) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) throw NonPositiveRadius(std::numeric_limits<double>::quiet_NaN(), i * h, i, r[i]);
  }
}

}  // namespace

MetricData metric(const Field& r) {
  const double h = r.grid().dtheta();
  require_positive(r.values(), h);
  std::vector<double> rt(r.size()), rtt(r.size()), g(r.size());
  first_derivative(r.values(), h, rt);
  second_derivative(r.values(), h, rtt);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = r[i] * r[i] + rt[i] * rt[i];
  return {Field(r.grid_ptr(), std::move(g)), Field(r.grid_ptr(), std::move(rt)),
          Field(r.grid_ptr(), std::move(rtt))};
}

void operator_coefficients(std::span<const double> r, double h, OperatorCoefficients& c) {
  const std::size_t nodes = r.size();
  require_positive(r, h);
  c.inv_g.resize(nodes);
  c.drift.resize(nodes);
  c.r_theta.resize(nodes);
  c.r_thetatheta.resize(nodes);
  first_derivative(r, h, c.r_theta);
  second_derivative(r, h, c.r_thetatheta);
  double min_g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes; ++i) {
    const double rt = c.r_theta[i];
    const double g = r[i] * r[i] + rt * rt;
    min_g = std::min(min_g, g);
    c.inv_g[i] = 1.0 / g;
    c.drift[i] = (r[i] * rt + rt * c.r_thetatheta[i]) / (g * g);
  }
  c.min_g = min_g;
}

void flat_operator_coefficients(std::size_t nodes, OperatorCoefficients& c) {
  c.inv_g.assign(nodes, 1.0);
  c.drift.assign(nodes, 0.0);
  c.min_g = 1.0;
}

void apply_operator(const OperatorCoefficients& c, std::span<const double> s, double h, NeumannSide side,
                    std::span<double> out) {
  const std::size_t n = s.size() - 1;
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 1.0 / (2.0 * h);
  for (std::size_t i = 1; i < n; ++i) {
    const double d2 = ((s[i + 1] + s[i - 1]) - 2.0 * s[i]) * inv_h2;
    const double d1 = (s[i + 1] - s[i - 1]) * inv_2h;
    out[i] = c.inv_g[i] * d2 - c.drift[i] * d1;
  }
  switch (side) {
    case NeumannSide::AtZero:
      out[0] = c.inv_g[0] * (2.0 * (s[1] - s[0]) * inv_h2);
      out[n] = 0.0;
      break;
    case NeumannSide::AtPi:
      out[n] = c.inv_g[n] * (2.0 * (s[n - 1] - s[n]) * inv_h2);
      out[0] = 0.0;
      break;
    case NeumannSide::None: {
      const double d2_lo = ((2.0 * (s[0] - s[1]) - 3.0 * (s[1] - s[2])) + (s[2] - s[3])) * inv_h2;
      const double d1_lo = (3.0 * (s[1] - s[0]) - (s[2] - s[1])) * inv_2h;
      const double d2_hi = ((2.0 * (s[n] - s[n - 1]) - 3.0 * (s[n - 1] - s[n - 2])) + (s[n - 2] - s[n - 3])) * inv_h2;
      const double d1_hi = (3.0 * (s[n] - s[n - 1]) - (s[n - 1] - s[n - 2])) * inv_2h;
      out[0] = c.inv_g[0] * d2_lo - c.drift[0] * d1_lo;
      out[n] = c.inv_g[n] * d2_hi - c.drift[n] * d1_hi;
      break;
    }
  }
}

Field laplace_beltrami(const Field& s, const Field& r) {
  require_same_grid(s, r);
  OperatorCoefficients c;
  operator_coefficients(r.values(), r.grid().dtheta(), c);
  std::vector<double> out(s.size());
  apply_operator(c, s.values(), s.grid().dtheta(), NeumannSide::None, out);
  return Field(s.grid_ptr(), std::move(out));
}

}  // namespace dpde
