#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpde/controls.hpp"
#include "dpde/dynamics.hpp"

namespace dpde::harness {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

/// Strict parse of a whole token; throws ConfigError naming `what`.
double parse_number(std::string_view text, std::string_view what = "number");

/// Writes via a temporary sibling file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Header `t,theta,r,s` or `t,theta,r,s_L,s_R`; one row per (snapshot, node).
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// A trajectory CSV read back as plain columns, grouped by snapshot.
struct TrajectoryTable {
  bool double_source = false;
  std::vector<double> times;
  std::vector<double> thetas;
  std::vector<std::vector<double>> r;
  std::vector<std::vector<double>> s;
  std::vector<std::vector<double>> s_right;

  /// Index of the snapshot within 1e-9 of t; throws MissingSnapshot.
  std::size_t index_of(double t) const;
};

TrajectoryTable read_trajectory_csv(const std::filesystem::path& path);

/// Header `t,u`. Only tabulated schedules can be written.
std::string control_csv(const ControlSchedule& u);
void write_control_csv(const std::filesystem::path& path, const ControlSchedule& u);
ControlSchedule read_control_csv(const std::filesystem::path& path);

/// Header `theta,value`, interpolated linearly; must cover [0, pi].
Profile read_profile_csv(const std::filesystem::path& path);

std::string key_values_text(const KeyValues& kv);
KeyValues parse_key_values(std::string_view text);

}  // namespace dpde::harness
