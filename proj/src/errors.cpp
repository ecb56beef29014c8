#include "dpde/errors.hpp"

#include <sstream>

namespace dpde {

namespace {

std::string describe_radius(double time, double theta, std::size_t node, double value) {
  std::ostringstream os;
  os << "non-positive radius " << value << " at node " << node << " (theta=" << theta << ")";
  if (time == time) os << " at t=" << time;
  return os.str();
}

std::string describe_config(const std::string& message, const std::string& key, int line) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  if (!key.empty()) os << "key '" << key << "': ";
  os << message;
  return os.str();
}

}  // namespace

NonPositiveRadius::NonPositiveRadius(double time, double theta, std::size_t node, double value)
    : Error(describe_radius(time, theta, node, value)), time_(time), theta_(theta), node_(node), value_(value) {}

UnstableStep::UnstableStep(double dt, double limit)
    : Error("time step " + std::to_string(dt) + " exceeds stability bound " + std::to_string(limit)),
      dt_(dt),
      limit_(limit) {}

ConfigError::ConfigError(const std::string& message, std::string key, int line)
    : Error(describe_config(message, key, line)), key_(std::move(key)), line_(line) {}

SimulationFailure::SimulationFailure(const std::string& cause, std::vector<double> knots)
    : Error("inner simulation failed: " + cause), knots_(std::move(knots)) {}

NoDescent::NoDescent(const std::string& message, std::vector<double> knots, double cost)
    : Error(message), knots_(std::move(knots)), cost_(cost) {}

MissingSnapshot::MissingSnapshot(double t) : Error("no snapshot at t=" + std::to_string(t)), time_(t) {}

}  // namespace dpde
