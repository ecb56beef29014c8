#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (grid too coarse, bad horizon, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The radius reached a non-positive value: the membrane degenerated.
/// `time()` is NaN when the failure was detected outside of a time loop.
class NonPositiveRadius : public Error {
 public:
  NonPositiveRadius(double time, double theta, std::size_t node, double value);

  double time() const { return time_; }
  double theta() const { return theta_; }
  std::size_t node() const { return node_; }
  double value() const { return value_; }

  NonPositiveRadius at_time(double t) const { return {t, theta_, node_, value_}; }

 private:
  double time_;
  double theta_;
  std::size_t node_;
  double value_;
};

class UnstableStep : public Error {
 public:
  UnstableStep(double dt, double limit);
  double dt() const { return dt_; }
  double limit() const { return limit_; }

 private:
  double dt_;
  double limit_;
};

/// Configuration problems. `line()` is 0 when the error is not tied to a file line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::string key = {}, int line = 0);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// An inner simulation of the optimizer failed; carries the offending knot vector.
class SimulationFailure : public Error {
 public:
  SimulationFailure(const std::string& cause, std::vector<double> knots);
  const std::vector<double>& knots() const { return knots_; }

 private:
  std::vector<double> knots_;
};

/// The optimizer's line search stalled; carries the best iterate reached.
class NoDescent : public Error {
 public:
  NoDescent(const std::string& message, std::vector<double> knots, double cost);
  const std::vector<double>& knots() const { return knots_; }
  double cost() const { return cost_; }

 private:
  std::vector<double> knots_;
  double cost_;
};

class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

class MissingSnapshot : public Error {
 public:
  explicit MissingSnapshot(double t);
  double time() const { return time_; }

 private:
  double time_;
};

class MismatchedGrids : public Error {
 public:
  using Error::Error;
};

class DegenerateBoundaryRadius : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a tabulated schedule outside its time table.
class OutOfTableRange : public Error {
 public:
  using Error::Error;
};

}  // namespace dpde
