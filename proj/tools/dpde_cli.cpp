#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpde/equilibria.hpp"
#include "dpde/errors.hpp"
#include "dpde/harness/config.hpp"
#include "dpde/harness/experiment.hpp"
#include "dpde/harness/io.hpp"
#include "dpde/harness/svg.hpp"
#include "dpde/planner.hpp"

namespace fs = std::filesystem;
using namespace dpde;
using namespace dpde::harness;

namespace {

struct SimulateArgs {
  std::string experiment;
  std::optional<int> n_cells;
  std::optional<double> t_final;
  std::vector<double> svg_times;
};

struct FlatArgs {
  double target = 1.0;
  double horizon = 5.0;
  int truncation = 12;
  double sigma = GevreyStep::kDefaultSigma;
  int samples = 2001;
  int n_cells = 100;
};

struct OptArgs {
  std::string r0 = "constant:1";
  std::string r1;
  std::string target_experiment;
  double horizon = 10.0;
  int n_cells = 100;
  OptimizeOptions options;
};

struct EquilibriaArgs {
  double u_e = 1.0;
  double lambda = 0.0;
  int n_cells = 100;
};

struct ConvergeArgs {
  std::string experiment = "fig2_growing_const";
  std::vector<int> levels = {50, 100, 200};
};

struct RenderArgs {
  std::string csv;
  std::vector<double> times;
};

void say(const std::string& line) { std::cout << line << '\n'; }

void run_simulate(const SimulateArgs& a, const fs::path& out_dir) {
  Experiment exp = load_experiment(a.experiment);
  if (a.n_cells) exp.config.n_cells = *a.n_cells;
  if (a.t_final) exp.config.t_final = *a.t_final;
  exp.config.validate();
  const RunArtifacts art = run_experiment(exp, out_dir, a.svg_times);
  say("wrote " + art.trajectory_csv.string());
  say("wrote " + art.summary.string());
  for (const auto& p : art.svgs) say("wrote " + p.string());
  std::cout << key_values_text(summarize(art.trajectory).key_values());
}

void run_plan_flat(const FlatArgs& a, const fs::path& out_dir) {
  const FlatPlan plan = flatness_control(a.target, a.horizon, a.truncation, a.sigma, a.samples);
  const fs::path control_path = out_dir / "flat_control.csv";
  write_control_csv(control_path, plan.control);

  SimConfig config;
  config.mode = SimMode::StaticSingle;
  config.n_cells = a.n_cells;
  config.t_final = a.horizon;
  config.initial_r = constant_profile(1.0);
  const std::vector<ControlSchedule> schedules = {plan.series_control()};
  const Trajectory traj = simulate(config, schedules);
  const Field residual = traj.final().s - Field::constant(traj.grid(), a.target);
  const KeyValues kv = {{"target", format_number(a.target)},
                        {"horizon", format_number(a.horizon)},
                        {"truncation", std::to_string(a.truncation)},
                        {"sigma", format_number(a.sigma)},
                        {"terminal_error_l2", format_number(l2_norm(residual))}};
  const fs::path report = out_dir / "flat_report.txt";
  write_file_atomic(report, key_values_text(kv));
  say("wrote " + control_path.string());
  say("wrote " + report.string());
  std::cout << key_values_text(kv);
}

void run_plan_opt(const OptArgs& a, const fs::path& out_dir) {
  double horizon = a.horizon;
  std::optional<Field> r1;
  GridPtr grid = make_grid(a.n_cells);
  if (!a.target_experiment.empty()) {
    Experiment exp = load_experiment(a.target_experiment);
    exp.config.n_cells = a.n_cells;
    horizon = exp.config.t_final;
    r1 = simulate(exp.config, exp.schedules).final().r;
  } else if (!a.r1.empty()) {
    r1 = Field::sample(grid, parse_profile_spec(a.r1));
  } else {
    throw ConfigError("plan-opt needs --r1 or --target-from", "r1");
  }
  const Field r0 = Field::sample(grid, parse_profile_spec(a.r0));
  const PlanReport rep = optimize_control(r0, *r1, horizon, a.options);

  const fs::path control_path = out_dir / "opt_control.csv";
  write_control_csv(control_path, rep.control);
  const KeyValues kv = {{"iterations", std::to_string(rep.iterations)},
                        {"final_cost", format_number(rep.cost_history.back())},
                        {"terminal_shape_error", format_number(rep.terminal_shape_error)},
                        {"terminal_signal_error", format_number(rep.terminal_signal_error)},
                        {"gradient_norm", format_number(rep.gradient_norm)},
                        {"converged", rep.converged ? "true" : "false"},
                        {"stop_reason", rep.stop_reason}};
  const fs::path report = out_dir / "opt_report.txt";
  write_file_atomic(report, key_values_text(kv));
  say("wrote " + control_path.string());
  say("wrote " + report.string());
  std::cout << key_values_text(kv);
}

void run_equilibria(const EquilibriaArgs& a, const fs::path& out_dir) {
  const GridPtr grid = make_grid(a.n_cells);
  const EquilibriumProfile eq = a.u_e == 0.0 ? zero_equilibrium(grid) : exponential_equilibrium(a.u_e, a.lambda, grid);
  const Field residual = equilibrium_residual(eq.s_e);
  std::string csv = "theta,s_e,residual\n";
  for (std::size_t i = 0; i < grid->size(); ++i) {
    csv += format_number(grid->theta(i)) + "," + format_number(eq.s_e[i]) + "," + format_number(residual[i]) + "\n";
  }
  const fs::path path = out_dir / "equilibrium.csv";
  write_file_atomic(path, csv);
  const char* family = eq.family == EquilibriumFamily::Zero ? "zero"
                       : eq.family == EquilibriumFamily::Constant ? "constant"
                                                                   : "exponential";
  const KeyValues kv = {{"family", family},
                        {"u_e", format_number(eq.u_e)},
                        {"lambda", format_number(eq.lambda)},
                        {"residual_max", format_number(max_norm(residual))},
                        {"neumann_defect", format_number(eq.neumann_defect)}};
  say("wrote " + path.string());
  std::cout << key_values_text(kv);
}

void run_converge(const ConvergeArgs& a, const fs::path& out_dir) {
  const Experiment exp = load_experiment(a.experiment);
  const auto rows = convergence_study(exp, a.levels);
  const std::string csv = convergence_csv(rows);
  const fs::path path = out_dir / (exp.name + "_convergence.csv");
  write_file_atomic(path, csv);
  say("wrote " + path.string());
  std::cout << csv;
}

void run_render(const RenderArgs& a, const fs::path& out_dir) {
  for (const auto& p : export_svg(a.csv, a.times, out_dir)) say("wrote " + p.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth of a curve driven by a diffusing signal"};
  app.require_subcommand(1);
  std::string out_dir = "out";

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run a preset or config file, write trajectory CSV and summary");
  c_sim->add_option("experiment", sim.experiment, "Preset name or config path")->required();
  c_sim->add_option("--n-cells", sim.n_cells, "Override the grid size");
  c_sim->add_option("--t-final", sim.t_final, "Override the horizon");
  c_sim->add_option("--svg", sim.svg_times, "Snapshot times to render");

  FlatArgs flat;
  auto* c_flat = app.add_subcommand("plan-flat", "Flatness-based control of the heat equation towards a constant");
  c_flat->add_option("--target", flat.target, "Terminal constant c")->capture_default_str();
  c_flat->add_option("--horizon", flat.horizon, "Transition time T")->capture_default_str();
  c_flat->add_option("--truncation", flat.truncation, "Series truncation order K")->capture_default_str();
  c_flat->add_option("--sigma", flat.sigma, "Gevrey order of the step")->capture_default_str();
  c_flat->add_option("--samples", flat.samples, "Table samples")->capture_default_str();
  c_flat->add_option("--n-cells", flat.n_cells, "Grid for the verification run")->capture_default_str();

  OptArgs opt;
  auto* c_opt = app.add_subcommand("plan-opt", "Optimise a boundary control towards a target shape");
  c_opt->add_option("--r0", opt.r0, "Initial radius, constant:<v> or csv:<path>")->capture_default_str();
  c_opt->add_option("--r1", opt.r1, "Target radius, constant:<v> or csv:<path>");
  c_opt->add_option("--target-from", opt.target_experiment, "Use the final radius of this experiment as target");
  c_opt->add_option("--horizon", opt.horizon, "Horizon T (taken from the experiment with --target-from)")
      ->capture_default_str();
  c_opt->add_option("--n-cells", opt.n_cells, "Grid size")->capture_default_str();
  c_opt->add_option("--knots", opt.options.knots, "Control knots")->capture_default_str();
  c_opt->add_option("--w-shape", opt.options.w_shape)->capture_default_str();
  c_opt->add_option("--w-signal", opt.options.w_signal)->capture_default_str();
  c_opt->add_option("--w-reg", opt.options.w_reg)->capture_default_str();
  c_opt->add_option("--tol", opt.options.tol)->capture_default_str();
  c_opt->add_option("--max-iters", opt.options.max_iters)->capture_default_str();

  EquilibriaArgs eq;
  auto* c_eq = app.add_subcommand("equilibria", "Tabulate a self-similar equilibrium profile and its residual");
  c_eq->add_option("--u-e", eq.u_e, "Boundary value (0 gives the zero profile)")->capture_default_str();
  c_eq->add_option("--lambda", eq.lambda, "Exponential rate (0 gives the constant profile)")->capture_default_str();
  c_eq->add_option("--n-cells", eq.n_cells)->capture_default_str();

  ConvergeArgs conv;
  auto* c_conv = app.add_subcommand("converge", "Grid refinement study of r(T)");
  c_conv->add_option("experiment", conv.experiment, "Preset name or config path")->capture_default_str();
  c_conv->add_option("--levels", conv.levels, "Grid sizes, each double the previous")->capture_default_str();

  RenderArgs ren;
  auto* c_ren = app.add_subcommand("render", "Render snapshots of a trajectory CSV as SVG");
  c_ren->add_option("csv", ren.csv, "Trajectory CSV")->required();
  c_ren->add_option("--times", ren.times, "Snapshot times")->required();

  for (auto* sub : {c_sim, c_flat, c_opt, c_eq, c_conv, c_ren}) {
    sub->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_sim) run_simulate(sim, out_dir);
    if (*c_flat) run_plan_flat(flat, out_dir);
    if (*c_opt) run_plan_opt(opt, out_dir);
    if (*c_eq) run_equilibria(eq, out_dir);
    if (*c_conv) run_converge(conv, out_dir);
    if (*c_ren) run_render(ren, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const MissingSnapshot& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const OutOfTableRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const MismatchedGrids& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "simulation failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
