#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dpde/controls.hpp"
#include "dpde/dynamics.hpp"

namespace dpde::harness {

/// A runnable experiment: configuration plus its control schedule(s)
/// (left then right in double-source mode).
struct Experiment {
  std::string name;
  SimConfig config;
  std::vector<ControlSchedule> schedules;
};

/// Flat key=value format, one pair per line, '#' starts a comment line.
///
///   mode           growing_single | static_single | growing_double
///   n_cells        integer >= 8                        (default 100)
///   t_final        > 0                                 (default 8)
///   dt_safety      in (0, 1]                           (default 0.9)
///   snapshot_every > 0                                 (default 0.5)
///   r0, s0, s0_right   constant:<v> | csv:<path>       (defaults 1, 0, 0)
///   control, control_right   u1 | u2 | u3 | constant:<v> | csv:<path>
///
/// `control` is required; `control_right` is required in, and only allowed in,
/// growing_double mode. Relative csv paths resolve against `base_dir`.
/// Every problem raises ConfigError with the key and line.
Experiment parse_config_text(std::string_view text, const std::filesystem::path& base_dir = ".",
                             std::string name = "config");
Experiment parse_config(const std::filesystem::path& path);

/// u1 | u2 | u3 | constant:<v> | csv:<path>
ControlSchedule parse_control_spec(std::string_view spec, const std::filesystem::path& base_dir = ".");
/// constant:<v> | csv:<path>
Profile parse_profile_spec(std::string_view spec, const std::filesystem::path& base_dir = ".");

std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
Experiment preset(std::string_view name);

/// A preset name, or else a config file path.
Experiment load_experiment(std::string_view preset_or_path);

}  // namespace dpde::harness
