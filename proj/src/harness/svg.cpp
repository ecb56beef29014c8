#include "dpde/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dpde::harness {

namespace fs = std::filesystem;

namespace {

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

double extent(const TrajectoryTable& table) {
  double m = 0.0;
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    for (std::size_t i = 0; i < table.thetas.size(); ++i) {
      m = std::max({m, std::abs(table.r[k][i]), std::abs(table.r[k][i] + table.s[k][i])});
      if (table.double_source) m = std::max(m, std::abs(table.r[k][i] + table.s_right[k][i]));
    }
  }
  return m > 0.0 ? m : 1.0;
}

/// Upper half from theta = 0 to pi, then its reflection back to 0.
std::string polyline(std::span<const double> thetas, const std::vector<double>& rho, const char* color, double width) {
  std::string pts;
  const std::size_t n = thetas.size();
  auto add = [&](double x, double y) {
    if (!pts.empty()) pts += ' ';
    pts += fixed(x) + "," + fixed(y);
  };
  for (std::size_t i = 0; i < n; ++i) add(rho[i] * std::cos(thetas[i]), -rho[i] * std::sin(thetas[i]));
  for (std::size_t i = n - 1; i-- > 0;) add(rho[i] * std::cos(thetas[i]), rho[i] * std::sin(thetas[i]));
  return "  <polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + fixed(width) + "\" points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string render_svg(const TrajectoryTable& table, std::size_t index) {
  const double m = 1.05 * extent(table);
  const std::size_t n = table.thetas.size();
  const auto& r = table.r[index];
  std::vector<double> overlay(n);
  for (std::size_t i = 0; i < n; ++i) overlay[i] = r[i] + table.s[index][i];

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fixed(-m) + " " + fixed(-m) + " " +
                    fixed(2 * m) + " " + fixed(2 * m) + "\" width=\"600\" height=\"600\">\n";
  out += "  <title>t = " + format_number(table.times[index]) + "</title>\n";
  out += polyline(table.thetas, r, "blue", m / 250);
  out += polyline(table.thetas, overlay, "red", m / 250);
  if (table.double_source) {
    for (std::size_t i = 0; i < n; ++i) overlay[i] = r[i] + table.s_right[index][i];
    out += polyline(table.thetas, overlay, "green", m / 250);
  }
  out += "</svg>\n";
  return out;
}

std::vector<fs::path> export_svg(const fs::path& trajectory_csv, std::span<const double> times, const fs::path& out_dir) {
  const TrajectoryTable table = read_trajectory_csv(trajectory_csv);
  std::vector<std::size_t> indices;
  for (double t : times) indices.push_back(table.index_of(t));
  std::string stem = trajectory_csv.stem().string();
  if (const auto pos = stem.rfind("_trajectory"); pos != std::string::npos && pos + 11 == stem.size()) stem.resize(pos);
  std::vector<fs::path> out;
  for (std::size_t k : indices) {
    fs::path path = out_dir / (stem + "_t" + format_number(table.times[k]) + ".svg");
    write_file_atomic(path, render_svg(table, k));
    out.push_back(std::move(path));
  }
  return out;
}

}  // namespace dpde::harness
