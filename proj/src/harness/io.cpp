#include "dpde/harness/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include "dpde/errors.hpp"

namespace dpde::harness {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("cannot parse '" + std::string(text) + "' as a finite number", std::string(what));
  }
  return value;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Non-empty lines with their 1-based line numbers; strips CR.
std::vector<std::pair<int, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 0;
  for (std::string_view line : split(text, '\n')) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

/// Parses a headed numeric CSV; checks the header and column count.
std::vector<std::vector<double>> read_numeric_csv(const fs::path& path, const std::vector<std::string>& header) {
  const std::string text = read_file(path);
  const auto lines = lines_of(text);
  std::string expected;
  for (std::size_t i = 0; i < header.size(); ++i) expected += (i ? "," : "") + header[i];
  if (lines.empty() || lines.front().second != expected) {
    throw ConfigError(path.string() + ": expected header '" + expected + "'", "", lines.empty() ? 1 : lines.front().first);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = split(lines[l].second, ',');
    if (cells.size() != header.size()) {
      throw ConfigError(path.string() + ": expected " + std::to_string(header.size()) + " columns", "", lines[l].first);
    }
    std::vector<double> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        row.push_back(parse_number(cells[c], header[c]));
      } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what(), header[c], lines[l].first);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  const bool two = traj.config.mode == SimMode::GrowingDouble;
  std::string out = two ? "t,theta,r,s_L,s_R\n" : "t,theta,r,s\n";
  const auto thetas = traj.grid()->thetas();
  for (const auto& snap : traj.snapshots) {
    const std::string t = format_number(snap.t);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      out += t;
      out += ',';
      out += format_number(thetas[i]);
      out += ',';
      out += format_number(snap.r[i]);
      out += ',';
      out += format_number(snap.s[i]);
      if (two) {
        out += ',';
        out += format_number((*snap.s_right)[i]);
      }
      out += '\n';
    }
  }
  return out;
}

void write_trajectory_csv(const fs::path& path, const Trajectory& traj) { write_file_atomic(path, trajectory_csv(traj)); }

std::size_t TrajectoryTable::index_of(double t) const {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::abs(times[k] - t) <= 1e-9) return k;
  }
  throw MissingSnapshot(t);
}

TrajectoryTable read_trajectory_csv(const fs::path& path) {
  const std::string text = read_file(path);
  const auto first_newline = text.find('\n');
  std::string_view header = std::string_view(text).substr(0, first_newline);
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  TrajectoryTable table;
  table.double_source = header == "t,theta,r,s_L,s_R";
  const auto rows = table.double_source ? read_numeric_csv(path, {"t", "theta", "r", "s_L", "s_R"})
                                        : read_numeric_csv(path, {"t", "theta", "r", "s"});
  for (const auto& row : rows) {
    if (table.times.empty() || row[0] != table.times.back()) {
      if (!table.times.empty() && row[0] < table.times.back()) throw ConfigError(path.string() + ": rows not ordered by time");
      table.times.push_back(row[0]);
      table.r.emplace_back();
      table.s.emplace_back();
      if (table.double_source) table.s_right.emplace_back();
    }
    if (table.times.size() == 1) table.thetas.push_back(row[1]);
    table.r.back().push_back(row[2]);
    table.s.back().push_back(row[3]);
    if (table.double_source) table.s_right.back().push_back(row[4]);
  }
  for (const auto& snap : table.r) {
    if (snap.size() != table.thetas.size()) throw ConfigError(path.string() + ": snapshots have differing node counts");
  }
  if (table.times.empty()) throw ConfigError(path.string() + ": no rows");
  return table;
}

std::string control_csv(const ControlSchedule& u) {
  const auto* tab = std::get_if<TabulatedControl>(&u.variant());
  if (!tab) throw InvalidArgument("only tabulated controls can be exported; tabulate() first");
  std::string out = "t,u\n";
  for (std::size_t i = 0; i < tab->times.size(); ++i) {
    out += format_number(tab->times[i]);
    out += ',';
    out += format_number(tab->values[i]);
    out += '\n';
  }
  return out;
}

void write_control_csv(const fs::path& path, const ControlSchedule& u) { write_file_atomic(path, control_csv(u)); }

ControlSchedule read_control_csv(const fs::path& path) {
  const auto rows = read_numeric_csv(path, {"t", "u"});
  std::vector<double> times, values;
  for (const auto& row : rows) {
    times.push_back(row[0]);
    values.push_back(row[1]);
  }
  try {
    return ControlSchedule::tabulated(std::move(times), std::move(values));
  } catch (const InvalidArgument& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Profile read_profile_csv(const fs::path& path) {
  const auto rows = read_numeric_csv(path, {"theta", "value"});
  std::vector<double> thetas, values;
  for (const auto& row : rows) {
    if (!thetas.empty() && !(row[0] > thetas.back())) throw ConfigError(path.string() + ": theta must increase");
    thetas.push_back(row[0]);
    values.push_back(row[1]);
  }
  if (thetas.size() < 2 || thetas.front() > 1e-12 || thetas.back() < std::numbers::pi - 1e-12) {
    throw ConfigError(path.string() + ": profile must cover [0, pi]");
  }
  return [thetas, values](double theta) {
    const auto it = std::upper_bound(thetas.begin(), thetas.end(), theta);
    if (it == thetas.begin()) return values.front();
    if (it == thetas.end()) return values.back();
    const std::size_t hi = static_cast<std::size_t>(it - thetas.begin());
    const double a = (theta - thetas[hi - 1]) / (thetas[hi] - thetas[hi - 1]);
    return (1.0 - a) * values[hi - 1] + a * values[hi];
  };
}

std::string key_values_text(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  for (const auto& [number, line] : lines_of(text)) {
    if (line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value", "", number);
    out.emplace_back(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace dpde::harness
