#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dpde/harness/io.hpp"

namespace dpde::harness {

/// SVG of snapshot `index`: the radius curve (blue), r + s (red) and, for
/// double-source tables, r + s_R (green), each mirrored to [-pi, pi] and closed.
/// The viewBox covers every snapshot of the table, so frames share one scale.
std::string render_svg(const TrajectoryTable& table, std::size_t index);

/// One file `<stem>_t<time>.svg` per requested time. Throws MissingSnapshot.
std::vector<std::filesystem::path> export_svg(const std::filesystem::path& trajectory_csv, std::span<const double> times,
                                              const std::filesystem::path& out_dir);

}  // namespace dpde::harness
