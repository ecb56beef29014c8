#pragma once

#include <span>
#include <vector>

namespace dpde {

/// Truncated Taylor series about a point: c[k] = f^(k)(t) / k!.
///
/// Arithmetic propagates all coefficients through the usual recurrences, so
/// derivatives of any order come out exact up to round-off.
class Jet {
 public:
  explicit Jet(int order);

  static Jet constant(double value, int order);
  /// The independent variable t about t0 (scaled): [t0, scale, 0, ...].
  static Jet variable(double t0, int order, double scale = 1.0);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  std::span<const double> coefficients() const { return c_; }

  double value() const { return c_[0]; }
  /// k-th derivative, k! * c[k].
  double derivative(int k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(double s, Jet a);

  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  /// a^p for a[0] > 0.
  friend Jet pow(const Jet& a, double p);

 private:
  std::vector<double> c_;
};

}  // namespace dpde
