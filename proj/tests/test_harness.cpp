#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "dpde/errors.hpp"
#include "dpde/harness/config.hpp"
#include "dpde/harness/experiment.hpp"
#include "dpde/harness/io.hpp"
#include "dpde/harness/svg.hpp"
#include "oracles.hpp"

using namespace dpde;
using namespace dpde::harness;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dpde_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int config_error_line(std::string_view text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string config_error_key(std::string_view text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("number formatting round trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, pi, 1e-300, 6.02214076e23}) {
    CHECK(parse_number(format_number(x)) == x);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK_THROWS_AS(parse_number("1.5x"), ConfigError);
  CHECK_THROWS_AS(parse_number(""), ConfigError);
  CHECK_THROWS_AS(parse_number("nan"), ConfigError);
}

TEST_CASE("config parsing") {
  const Experiment e = parse_config_text("# comment\nmode = growing_single\ncontrol=u1\n");
  const Experiment p = preset("fig2_growing_const");
  CHECK(e.config.mode == p.config.mode);
  CHECK(e.config.n_cells == p.config.n_cells);
  CHECK(e.config.t_final == p.config.t_final);
  CHECK(e.config.dt_safety == p.config.dt_safety);
  CHECK(e.config.snapshot_every == p.config.snapshot_every);
  CHECK(trajectory_csv(simulate(e.config, e.schedules)) == trajectory_csv(simulate(p.config, p.schedules)));

  CHECK_THROWS_AS(parse_config_text("mode=growing_double\ncontrol=u3\n"), ConfigError);
  CHECK(config_error_key("mode=growing_double\ncontrol=u3\n") == "control_right");
  CHECK_THROWS_AS(parse_config_text("mode=growing_single\n"), ConfigError);
  CHECK(config_error_key("control=u1\nn_cells=4\n") == "n_cells");
  CHECK(config_error_line("control=u1\nn_cells=4\n") == 2);
  CHECK(config_error_key("control=u1\ncolour=blue\n") == "colour");
  CHECK(config_error_line("control=u1\n\ncolour=blue\n") == 3);
  CHECK(config_error_key("control=u1\ncontrol=u2\n") == "control");
  CHECK(config_error_key("control=u1\nmode=sideways\n") == "mode");
  CHECK(config_error_key("control=u1\nt_final=abc\n") == "t_final");
  CHECK(config_error_key("control=u9\n") == "control");
  CHECK(config_error_key("control=u1\ncontrol_right=u1\n") == "control_right");
  CHECK(config_error_line("control=u1\njust text\n") == 2);

  const Experiment d = parse_config_text("mode=growing_double\ncontrol=u3\ncontrol_right=constant:0.1\nr0=constant:2\n");
  CHECK(d.schedules.size() == 2);
  CHECK(d.schedules[1](3.0) == 0.1);
  CHECK(d.config.initial_r(1.0) == 2.0);
}

TEST_CASE("config with csv references") {
  const fs::path dir = scratch("config_csv");
  write_file_atomic(dir / "u.csv", "t,u\n0,0\n5,1\n10,1\n");
  write_file_atomic(dir / "r.csv", "theta,value\n0,1\n3.141592653589793,2\n");
  write_file_atomic(dir / "run.cfg", "control=csv:u.csv\nr0=csv:r.csv\nt_final=2\n");
  const Experiment e = parse_config(dir / "run.cfg");
  CHECK(e.name == "run");
  CHECK(e.schedules[0](2.5) == 0.5);
  CHECK(e.config.initial_r(pi / 2) == doctest::Approx(1.5));

  write_file_atomic(dir / "bad.csv", "t,v\n0,0\n");
  write_file_atomic(dir / "bad.cfg", "control=csv:bad.csv\n");
  CHECK_THROWS_AS(parse_config(dir / "bad.cfg"), ConfigError);
  CHECK_THROWS_AS(parse_config(dir / "missing.cfg"), ConfigError);
  CHECK(load_experiment("fig4_apple").name == "fig4_apple");
  CHECK(load_experiment((dir / "run.cfg").string()).name == "run");
}

TEST_CASE("preset fidelity") {
  CHECK(preset_names().size() == 5);
  CHECK_THROWS_AS(preset("fig99"), ConfigError);
  const auto u1 = ControlSchedule::u1(), u2 = ControlSchedule::u2(), u3 = ControlSchedule::u3();
  for (const auto& name : preset_names()) {
    const Experiment e = preset(name);
    CHECK(e.config.initial_r(0.3) == 1.0);
    CHECK(e.config.initial_s(0.3) == 0.0);
    CHECK(e.config.n_cells == 100);
  }
  CHECK(preset("fig2_growing_const").config.t_final == 8.0);
  CHECK(preset("fig_static_const").config.mode == SimMode::StaticSingle);
  CHECK(preset("fig4_apple").config.t_final == 10.0);
  CHECK(preset("fig6_double").config.mode == SimMode::GrowingDouble);

  auto same = [](const ControlSchedule& a, const ControlSchedule& b) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = 10.0 * i / 999;
      worst = std::max(worst, std::abs(a(t) - b(t)));
    }
    return worst;
  };
  CHECK(same(preset("fig2_growing_const").schedules[0], u1) <= 1e-15);
  CHECK(same(preset("fig_static_const").schedules[0], u1) <= 1e-15);
  CHECK(same(preset("fig4_apple").schedules[0], u2) <= 1e-15);
  CHECK(same(preset("fig5_circle").schedules[0], u3) <= 1e-15);
  CHECK(same(preset("fig6_double").schedules[0], u3) <= 1e-15);
  CHECK(same(preset("fig6_double").schedules[1], u3) <= 1e-15);
}

TEST_CASE("control csv round trip") {
  const fs::path dir = scratch("control_csv");
  const ControlSchedule u = tabulate(ControlSchedule::u2(), 10.0, 257);
  write_control_csv(dir / "u.csv", u);
  const ControlSchedule back = read_control_csv(dir / "u.csv");
  const auto& tab = std::get<TabulatedControl>(u.variant());
  for (double t : tab.times) CHECK(back(t) == u(t));
  CHECK_THROWS_AS(control_csv(ControlSchedule::u1()), InvalidArgument);
}

TEST_CASE("trajectory csv") {
  SimConfig c;
  c.n_cells = 10;
  c.t_final = 1.0;
  const Trajectory traj = simulate(c, std::vector{ControlSchedule::u2()});
  const std::string text = trajectory_csv(traj);
  CHECK(text.rfind("t,theta,r,s\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  const fs::path dir = scratch("trajectory_csv");
  write_trajectory_csv(dir / "a.csv", traj);
  const TrajectoryTable table = read_trajectory_csv(dir / "a.csv");
  CHECK(!table.double_source);
  CHECK(table.times.size() == traj.snapshots.size());
  CHECK(table.thetas.size() == 11);
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    CHECK(table.times[k] == traj.snapshots[k].t);
    for (std::size_t i = 0; i < table.thetas.size(); ++i) {
      CHECK(table.r[k][i] == traj.snapshots[k].r[i]);
      CHECK(table.s[k][i] == traj.snapshots[k].s[i]);
    }
  }
  CHECK_THROWS_AS(table.index_of(0.7), MissingSnapshot);
  CHECK(!fs::exists(dir / "a.csv.tmp"));

  c.mode = SimMode::GrowingDouble;
  const std::string two = trajectory_csv(simulate(c, std::vector{ControlSchedule::u3(), ControlSchedule::u3()}));
  CHECK(two.rfind("t,theta,r,s_L,s_R\n", 0) == 0);
}

TEST_CASE("run_experiment is deterministic and summarises") {
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  const std::vector<double> times{0.0, 10.0};
  const RunArtifacts ra = run_experiment(preset("fig4_apple"), a, times);
  const RunArtifacts rb = run_experiment(preset("fig4_apple"), b, times);
  CHECK(read_file(ra.trajectory_csv) == read_file(rb.trajectory_csv));
  CHECK(read_file(ra.summary) == read_file(rb.summary));
  REQUIRE(ra.svgs.size() == 2);
  CHECK(read_file(ra.svgs[1]) == read_file(rb.svgs[1]));

  const KeyValues kv = parse_key_values(read_file(ra.summary));
  std::vector<std::string> keys;
  for (const auto& [k, v] : kv) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"final_r_min", "final_r_max", "r_T_0", "r_T_pi", "r_T_half_pi",
                                         "shape_ratio_variation", "signal_l2_final"});
  const Summary s = summarize(ra.trajectory);
  CHECK(s.r_T_pi < s.r_T_0);
  CHECK(!s.signal_right_l2_final);

  const Summary d = summarize(simulate(preset("fig6_double").config, preset("fig6_double").schedules));
  CHECK(d.signal_right_l2_final);
  CHECK(d.r_T_half_pi > d.r_T_0);
  CHECK(std::abs(d.r_T_0 - d.r_T_pi) <= 1e-9);
}

TEST_CASE("svg export") {
  const fs::path dir = scratch("svg");
  SimConfig c;
  c.n_cells = 16;
  c.t_final = 1.0;
  write_trajectory_csv(dir / "rest_trajectory.csv", simulate(c, std::vector{ControlSchedule::constant(0.0)}));
  const std::vector<double> t0{0.0};
  const auto files = export_svg(dir / "rest_trajectory.csv", t0, dir);
  REQUIRE(files.size() == 1);
  CHECK(files[0].filename() == "rest_t0.svg");
  const std::string svg = read_file(files[0]);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("stroke=\"green\"") == std::string::npos);

  // Every vertex of the radius curve sits on the unit circle, and the curve closes.
  const auto start = svg.find("points=\"") + 8;
  const std::string pts = svg.substr(start, svg.find('"', start) - start);
  std::vector<std::pair<double, double>> xy;
  std::size_t pos = 0;
  while (pos < pts.size()) {
    std::size_t end = pts.find(' ', pos);
    if (end == std::string::npos) end = pts.size();
    const std::string tok = pts.substr(pos, end - pos);
    const auto comma = tok.find(',');
    xy.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    pos = end + 1;
  }
  CHECK(xy.size() == 2 * 17 - 1);
  for (const auto& [x, y] : xy) CHECK(std::hypot(x, y) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(xy.front() == xy.back());

  const std::vector<double> missing{0.25};
  CHECK_THROWS_AS(export_svg(dir / "rest_trajectory.csv", missing, dir), MissingSnapshot);
  const auto again = export_svg(dir / "rest_trajectory.csv", t0, dir);
  CHECK(read_file(again[0]) == svg);
}

TEST_CASE("apple svg dips on the source side") {
  const fs::path dir = scratch("apple_svg");
  const std::vector<double> t{10.0};
  const RunArtifacts art = run_experiment(preset("fig4_apple"), dir, t);
  const TrajectoryTable table = read_trajectory_csv(art.trajectory_csv);
  const auto& r = table.r[table.index_of(10.0)];
  // Radius at pi is a local minimum of the curve: the dimple.
  CHECK(r.back() < r[r.size() - 5]);
  CHECK(r.back() < r.front());
  CHECK(read_file(art.svgs[0]).find("t = 10") != std::string::npos);
}

TEST_CASE("convergence study") {
  const std::vector<int> levels{50, 100, 200};
  const auto rows = convergence_study("fig2_growing_const", levels);
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].order >= 1.5);
  CHECK(!rows[2].difference);

  const std::vector<int> bad{50, 100, 150};
  CHECK_THROWS_AS(convergence_study("fig2_growing_const", bad), InvalidArgument);
  const std::vector<int> two{50, 100};
  CHECK_THROWS_AS(convergence_study("fig2_growing_const", two), InvalidArgument);

  const Experiment rest = parse_config_text("control=constant:0\nt_final=2\n");
  const auto zero = convergence_study(rest, levels);
  CHECK(*zero[0].difference == 0.0);
  CHECK(std::isinf(*zero[0].order));
  CHECK(convergence_csv(zero).find("exact") != std::string::npos);
}

TEST_CASE("convergence study against the static series") {
  Experiment e = preset("fig_static_const");
  e.config.t_final = 1.0;
  const std::vector<int> levels{25, 50, 100};
  const auto rows = convergence_study(e, levels, [](const GridPtr& g) {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = oracle::static_radius(1.0, g->theta(i));
    return Field(g, v);
  });
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    CHECK(*rows[k].estimated_error == doctest::Approx(*rows[k].oracle_error).epsilon(0.1));
  }
}

TEST_CASE("command line exit codes") {
  const char* cli = std::getenv("DPDE_CLI");
  if (!cli) return;
  const fs::path dir = scratch("cli");
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string(cli) + " " + args + " --out-dir " + dir.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("simulate fig5_circle") == 0);
  CHECK(fs::exists(dir / "fig5_circle_trajectory.csv"));
  CHECK(run("simulate no_such_preset") == 2);
  write_file_atomic(dir / "bad.cfg", "control=u1\nn_cells=4\n");
  CHECK(run("simulate " + (dir / "bad.cfg").string()) == 2);
  write_file_atomic(dir / "sink.cfg", "control=constant:-2\nt_final=10\nn_cells=20\n");
  CHECK(run("simulate " + (dir / "sink.cfg").string()) == 3);
  CHECK(run("render " + (dir / "fig5_circle_trajectory.csv").string() + " --times 0.3") == 2);
  CHECK(run("render " + (dir / "fig5_circle_trajectory.csv").string() + " --times 10") == 0);
  CHECK(run("plan-flat --truncation 8") == 3);
  CHECK(run("equilibria --lambda 2") == 0);
  CHECK(run("bogus") == 2);
}
