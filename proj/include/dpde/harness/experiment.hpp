#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dpde/dynamics.hpp"
#include "dpde/harness/config.hpp"
#include "dpde/harness/io.hpp"

namespace dpde::harness {

struct Summary {
  double final_r_min = 0.0;
  double final_r_max = 0.0;
  double r_T_0 = 0.0;
  double r_T_pi = 0.0;
  double r_T_half_pi = 0.0;
  double shape_ratio_variation = 0.0;  ///< over the second half of the run
  double signal_l2_final = 0.0;
  std::optional<double> signal_right_l2_final;

  KeyValues key_values() const;
};

Summary summarize(const Trajectory& traj);

/// Linear interpolation of nodal values at an arbitrary angle.
double value_at(const Field& f, double theta);

struct RunArtifacts {
  std::filesystem::path trajectory_csv;
  std::filesystem::path summary;
  std::vector<std::filesystem::path> svgs;
  Trajectory trajectory;
};

/// Runs the experiment and writes `<name>_trajectory.csv`, `<name>_summary.txt`
/// and, for each of `svg_times`, a polar SVG into out_dir.
RunArtifacts run_experiment(const Experiment& exp, const std::filesystem::path& out_dir,
                            std::span<const double> svg_times = {});

struct ConvergenceRow {
  int n_cells = 0;
  /// max |r_n(T) - r_2n(T)| on the nodes of the coarser grid; absent on the finest level.
  std::optional<double> difference;
  /// log2(difference_n / difference_2n); +inf when both vanish.
  std::optional<double> order;
  /// Richardson estimate of the error of this level, difference * 4/3.
  std::optional<double> estimated_error;
  /// max |r_n(T) - exact| when an exact final radius is supplied.
  std::optional<double> oracle_error;
};

using ExactRadius = std::function<Field(const GridPtr&)>;

/// Runs `exp` at each level (>= 3 levels, each double the previous) and tabulates
/// successive differences of r(T) and observed orders.
std::vector<ConvergenceRow> convergence_study(const Experiment& exp, std::span<const int> levels,
                                              const ExactRadius& exact = {});
std::vector<ConvergenceRow> convergence_study(std::string_view preset_name, std::span<const int> levels);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace dpde::harness
