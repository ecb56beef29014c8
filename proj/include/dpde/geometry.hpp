#pragma once

#include <span>
#include <vector>

#include "dpde/grid.hpp"

namespace dpde {

// Finite-difference stencils on a uniform grid. Central second order in the
// interior, one-sided second order at both endpoints. Written so that a mirrored
// input (f[i] -> f[n-i]) produces a bitwise mirrored (first derivative: negated)
// output.
void first_derivative(std::span<const double> f, double h, std::span<double> out);
void second_derivative(std::span<const double> f, double h, std::span<double> out);

Field first_derivative(const Field& f);
Field second_derivative(const Field& f);

/// Induced metric of the radial curve r(theta): g = r^2 + r_theta^2.
struct MetricData {
  Field g;
  Field r_theta;
  Field r_thetatheta;
};

/// Throws NonPositiveRadius if any r[i] <= 0.
MetricData metric(const Field& r);

/// Laplace-Beltrami operator of the curve r applied to s:
///   (1/g) s'' - (r r' + r' r'') / g^2 * s'
/// with the module's one-sided stencils at both endpoints.
Field laplace_beltrami(const Field& s, const Field& r);

/// Where a homogeneous Neumann condition is imposed through a mirror ghost node.
enum class NeumannSide { None, AtZero, AtPi };

/// The operator written as inv_g * d2 - drift * d1, precomputed from r.
/// Reused by the time stepper so one set of coefficients serves several signals.
struct OperatorCoefficients {
  std::vector<double> inv_g;
  std::vector<double> drift;
  double min_g = 1.0;

  /// Scratch for derivatives of r.
  std::vector<double> r_theta;
  std::vector<double> r_thetatheta;
};

/// Fills `coeffs` for the curve r. Throws NonPositiveRadius.
void operator_coefficients(std::span<const double> r, double h, OperatorCoefficients& coeffs);

/// Coefficients of the flat unit-circle operator (plain second derivative).
void flat_operator_coefficients(std::size_t nodes, OperatorCoefficients& coeffs);

/// out = inv_g * s'' - drift * s'. With a Neumann side, that endpoint uses the
/// ghost s[-1] = s[1] (or s[n+1] = s[n-1]); the opposite endpoint is left at zero,
/// since it carries a Dirichlet value. NeumannSide::None uses one-sided stencils.
void apply_operator(const OperatorCoefficients& coeffs, std::span<const double> s, double h, NeumannSide side,
                    std::span<double> out);

}  // namespace dpde
