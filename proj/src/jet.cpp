#include "dpde/jet.hpp"

#include <cmath>

#include "dpde/errors.hpp"

namespace dpde {

Jet::Jet(int order) {
  if (order < 0) throw InvalidArgument("jet order must be non-negative");
  c_.assign(order + 1, 0.0);
}

Jet Jet::constant(double value, int order) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double t0, int order, double scale) {
  Jet j(order);
  j.c_[0] = t0;
  if (order >= 1) j.c_[1] = scale;
  return j;
}

double Jet::derivative(int k) const {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f * c_[k];
}

static void require_same_order(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) throw InvalidArgument("jet orders differ");
}

Jet& Jet::operator+=(const Jet& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet operator-(double s, Jet a) {
  a *= -1.0;
  a.c_[0] += s;
  return a;
}

Jet operator*(const Jet& a, const Jet& b) {
  require_same_order(a, b);
  const int K = a.order();
  Jet r(K);
  for (int k = 0; k <= K; ++k) {
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) sum += a.c_[j] * b.c_[k - j];
    r.c_[k] = sum;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  require_same_order(a, b);
  const int K = a.order();
  Jet q(K);
  for (int k = 0; k <= K; ++k) {
    double sum = a.c_[k];
    for (int j = 1; j <= k; ++j) sum -= b.c_[j] * q.c_[k - j];
    q.c_[k] = sum / b.c_[0];
  }
  return q;
}

Jet exp(const Jet& a) {
  const int K = a.order();
  Jet e(K);
  e.c_[0] = std::exp(a.c_[0]);
  for (int k = 1; k <= K; ++k) {
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) sum += j * a.c_[j] * e.c_[k - j];
    e.c_[k] = sum / k;
  }
  return e;
}

Jet log(const Jet& a) {
  const int K = a.order();
  Jet l(K);
  l.c_[0] = std::log(a.c_[0]);
  for (int k = 1; k <= K; ++k) {
    double sum = 0.0;
    for (int j = 1; j < k; ++j) sum += j * l.c_[j] * a.c_[k - j];
    l.c_[k] = (a.c_[k] - sum / k) / a.c_[0];
  }
  return l;
}

Jet pow(const Jet& a, double p) {
  if (!(a.c_[0] > 0.0)) throw InvalidArgument("jet pow needs a positive base");
  const int K = a.order();
  Jet r(K);
  r.c_[0] = std::pow(a.c_[0], p);
  for (int k = 1; k <= K; ++k) {
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) sum += ((p + 1.0) * j - k) * a.c_[j] * r.c_[k - j];
    r.c_[k] = sum / (k * a.c_[0]);
  }
  return r;
}

}  // namespace dpde
