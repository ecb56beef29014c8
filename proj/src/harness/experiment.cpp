#include "dpde/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dpde/equilibria.hpp"
#include "dpde/errors.hpp"
#include "dpde/harness/svg.hpp"

namespace dpde::harness {

namespace fs = std::filesystem;

double value_at(const Field& f, double theta) {
  const double h = f.grid().dtheta();
  const int n = f.grid().n_cells();
  const double x = std::clamp(theta, 0.0, std::numbers::pi) / h;
  const int i = std::min(static_cast<int>(std::floor(x)), n - 1);
  const double a = x - i;
  if (a == 0.0) return f[i];
  return (1.0 - a) * f[i] + a * f[i + 1];
}

KeyValues Summary::key_values() const {
  KeyValues kv = {
      {"final_r_min", format_number(final_r_min)},
      {"final_r_max", format_number(final_r_max)},
      {"r_T_0", format_number(r_T_0)},
      {"r_T_pi", format_number(r_T_pi)},
      {"r_T_half_pi", format_number(r_T_half_pi)},
      {"shape_ratio_variation", format_number(shape_ratio_variation)},
      {"signal_l2_final", format_number(signal_l2_final)},
  };
  if (signal_right_l2_final) kv.emplace_back("signal_right_l2_final", format_number(*signal_right_l2_final));
  return kv;
}

Summary summarize(const Trajectory& traj) {
  const CoupledState& last = traj.final();
  Summary out;
  out.final_r_min = min_value(last.r);
  out.final_r_max = max_value(last.r);
  out.r_T_0 = last.r.front();
  out.r_T_pi = last.r.back();
  out.r_T_half_pi = value_at(last.r, std::numbers::pi / 2);
  out.shape_ratio_variation = shape_ratio(traj, last.t / 2, last.t).variation;
  out.signal_l2_final = l2_norm(last.s);
  if (last.s_right) out.signal_right_l2_final = l2_norm(*last.s_right);
  return out;
}

RunArtifacts run_experiment(const Experiment& exp, const fs::path& out_dir, std::span<const double> svg_times) {
  Trajectory traj = simulate(exp.config, exp.schedules);
  RunArtifacts out{out_dir / (exp.name + "_trajectory.csv"), out_dir / (exp.name + "_summary.txt"), {}, std::move(traj)};
  write_trajectory_csv(out.trajectory_csv, out.trajectory);
  write_file_atomic(out.summary, key_values_text(summarize(out.trajectory).key_values()));
  if (!svg_times.empty()) out.svgs = export_svg(out.trajectory_csv, svg_times, out_dir);
  return out;
}

std::vector<ConvergenceRow> convergence_study(const Experiment& exp, std::span<const int> levels, const ExactRadius& exact) {
  if (levels.size() < 3) throw InvalidArgument("convergence_study needs at least 3 levels");
  for (std::size_t k = 1; k < levels.size(); ++k) {
    if (levels[k] != 2 * levels[k - 1]) throw InvalidArgument("each level must double the previous one");
  }
  std::vector<Field> finals;
  for (int n : levels) {
    SimConfig config = exp.config;
    config.n_cells = n;
    finals.push_back(simulate(config, exp.schedules).final().r);
  }
  std::vector<ConvergenceRow> rows(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    rows[k].n_cells = levels[k];
    if (k + 1 < levels.size()) {
      const Field fine = restrict_to(finals[k + 1], finals[k].grid_ptr());
      rows[k].difference = max_norm(finals[k] - fine);
      rows[k].estimated_error = *rows[k].difference * 4.0 / 3.0;
    }
    if (exact) rows[k].oracle_error = max_norm(finals[k] - exact(finals[k].grid_ptr()));
  }
  for (std::size_t k = 0; k + 2 < levels.size(); ++k) {
    const double a = *rows[k].difference;
    const double b = *rows[k + 1].difference;
    if (a == 0.0 && b == 0.0) {
      rows[k].order = std::numeric_limits<double>::infinity();
    } else {
      rows[k].order = std::log2(a / b);
    }
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_study(std::string_view preset_name, std::span<const int> levels) {
  return convergence_study(preset(preset_name), levels);
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string();
    if (std::isinf(*v)) return std::string("exact");
    return format_number(*v);
  };
  std::string out = "n_cells,difference,order,estimated_error,oracle_error\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n_cells) + "," + cell(row.difference) + "," + cell(row.order) + "," +
           cell(row.estimated_error) + "," + cell(row.oracle_error) + "\n";
  }
  return out;
}

}  // namespace dpde::harness
