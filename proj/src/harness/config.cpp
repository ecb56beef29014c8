#include "dpde/harness/config.hpp"

#include <charconv>
#include <map>
#include <set>

#include "dpde/errors.hpp"
#include "dpde/harness/io.hpp"

namespace dpde::harness {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

fs::path resolve(std::string_view p, const fs::path& base_dir) {
  fs::path path{std::string(p)};
  return path.is_relative() ? base_dir / path : path;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("cannot parse '" + std::string(text) + "' as an integer");
  }
  return value;
}

SimMode parse_mode(std::string_view text) {
  if (text == "growing_single") return SimMode::GrowingSingle;
  if (text == "static_single") return SimMode::StaticSingle;
  if (text == "growing_double") return SimMode::GrowingDouble;
  throw ConfigError("unknown mode '" + std::string(text) + "' (growing_single, static_single, growing_double)");
}

const std::set<std::string, std::less<>> kKeys = {"mode",   "n_cells", "t_final",  "dt_safety", "snapshot_every",
                                                  "r0",     "s0",      "s0_right", "control",   "control_right"};

}  // namespace

ControlSchedule parse_control_spec(std::string_view spec, const fs::path& base_dir) {
  spec = trim(spec);
  if (spec == "u1") return ControlSchedule::u1();
  if (spec == "u2") return ControlSchedule::u2();
  if (spec == "u3") return ControlSchedule::u3();
  if (starts_with(spec, "constant:")) return ControlSchedule::constant(parse_number(spec.substr(9), "constant"));
  if (starts_with(spec, "csv:")) return read_control_csv(resolve(spec.substr(4), base_dir));
  throw ConfigError("unknown control '" + std::string(spec) + "' (u1, u2, u3, constant:<v>, csv:<path>)");
}

Profile parse_profile_spec(std::string_view spec, const fs::path& base_dir) {
  spec = trim(spec);
  if (starts_with(spec, "constant:")) return constant_profile(parse_number(spec.substr(9), "constant"));
  if (starts_with(spec, "csv:")) return read_profile_csv(resolve(spec.substr(4), base_dir));
  throw ConfigError("unknown profile '" + std::string(spec) + "' (constant:<v>, csv:<path>)");
}

Experiment parse_config_text(std::string_view text, const fs::path& base_dir, std::string name) {
  std::map<std::string, std::pair<std::string, int>, std::less<>> entries;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++number;
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value", "", number);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKeys.contains(key)) throw ConfigError("unknown key", key, number);
    if (entries.contains(key)) throw ConfigError("duplicate key", key, number);
    entries.emplace(key, std::make_pair(value, number));
  }

  // Rethrows parse problems with the key and line attached.
  auto with_entry = [&](const std::string& key, auto&& fn) {
    const auto& [value, line] = entries.at(key);
    try {
      fn(value);
    } catch (const Error& e) {
      throw ConfigError(e.what(), key, line);
    }
  };

  Experiment exp;
  exp.name = std::move(name);
  SimConfig& c = exp.config;
  if (entries.contains("mode")) with_entry("mode", [&](const std::string& v) { c.mode = parse_mode(v); });
  if (entries.contains("n_cells")) {
    with_entry("n_cells", [&](const std::string& v) {
      c.n_cells = parse_int(v);
      make_grid(c.n_cells);
    });
  }
  if (entries.contains("t_final")) with_entry("t_final", [&](const std::string& v) { c.t_final = parse_number(v); });
  if (entries.contains("dt_safety")) with_entry("dt_safety", [&](const std::string& v) { c.dt_safety = parse_number(v); });
  if (entries.contains("snapshot_every")) {
    with_entry("snapshot_every", [&](const std::string& v) { c.snapshot_every = parse_number(v); });
  }
  if (entries.contains("r0")) with_entry("r0", [&](const std::string& v) { c.initial_r = parse_profile_spec(v, base_dir); });
  if (entries.contains("s0")) with_entry("s0", [&](const std::string& v) { c.initial_s = parse_profile_spec(v, base_dir); });
  if (entries.contains("s0_right")) {
    if (c.mode != SimMode::GrowingDouble) {
      throw ConfigError("only valid in growing_double mode", "s0_right", entries.at("s0_right").second);
    }
    with_entry("s0_right", [&](const std::string& v) { c.initial_s_right = parse_profile_spec(v, base_dir); });
  }

  if (!entries.contains("control")) throw ConfigError("missing required key", "control");
  with_entry("control", [&](const std::string& v) { exp.schedules.push_back(parse_control_spec(v, base_dir)); });
  if (c.mode == SimMode::GrowingDouble) {
    if (!entries.contains("control_right")) throw ConfigError("missing required key in growing_double mode", "control_right");
    with_entry("control_right", [&](const std::string& v) { exp.schedules.push_back(parse_control_spec(v, base_dir)); });
  } else if (entries.contains("control_right")) {
    throw ConfigError("only valid in growing_double mode", "control_right", entries.at("control_right").second);
  }

  c.validate();
  return exp;
}

Experiment parse_config(const fs::path& path) {
  const std::string text = read_file(path);
  return parse_config_text(text, path.parent_path().empty() ? fs::path(".") : path.parent_path(), path.stem().string());
}

std::vector<std::string> preset_names() {
  return {"fig2_growing_const", "fig_static_const", "fig4_apple", "fig5_circle", "fig6_double"};
}

Experiment preset(std::string_view name) {
  Experiment exp;
  exp.name = std::string(name);
  SimConfig& c = exp.config;
  if (name == "fig2_growing_const") {
    c.mode = SimMode::GrowingSingle;
    c.t_final = 8.0;
    exp.schedules = {ControlSchedule::u1()};
  } else if (name == "fig_static_const") {
    c.mode = SimMode::StaticSingle;
    c.t_final = 8.0;
    exp.schedules = {ControlSchedule::u1()};
  } else if (name == "fig4_apple") {
    c.mode = SimMode::GrowingSingle;
    c.t_final = 10.0;
    exp.schedules = {ControlSchedule::u2()};
  } else if (name == "fig5_circle") {
    c.mode = SimMode::GrowingSingle;
    c.t_final = 10.0;
    exp.schedules = {ControlSchedule::u3()};
  } else if (name == "fig6_double") {
    c.mode = SimMode::GrowingDouble;
    c.t_final = 10.0;
    exp.schedules = {ControlSchedule::u3(), ControlSchedule::u3()};
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + std::string(name) + "' (" + known + ")", "preset");
  }
  return exp;
}

Experiment load_experiment(std::string_view preset_or_path) {
  for (const auto& n : preset_names()) {
    if (n == preset_or_path) return preset(n);
  }
  return parse_config(fs::path(std::string(preset_or_path)));
}

}  // namespace dpde::harness
