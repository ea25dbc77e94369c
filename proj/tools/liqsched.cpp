// liqsched: optimal liquidation horizons, cost simulation and parameter sweeps.
//
// Exit codes: 0 success, 2 validation error, 3 numerical degeneracy.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "liqsched/cost_engine.hpp"
#include "liqsched/errors.hpp"
#include "liqsched/montecarlo.hpp"
#include "liqsched/optimizer.hpp"
#include "liqsched/params_io.hpp"
#include "liqsched/rng.hpp"
#include "liqsched/schedule.hpp"
#include "liqsched/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace liqsched;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kOutDirEnv = "LIQSCHED_OUT_DIR";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

RiskLevel risk_for(const MarketDocument& doc, std::optional<double> p) {
  return p ? RiskLevel::from_probability(*p) : doc.risk;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

struct OptimalTimeArgs {
  std::string params;
  std::optional<double> p;
  std::optional<double> tau;
};

int cmd_optimal_time(const OptimalTimeArgs& a) {
  const MarketDocument doc = load_market(a.params);
  const RiskLevel risk = risk_for(doc, a.p);
  const OptimalHorizon closed = optimal_time_closed(doc.params, risk);

  json out{{"p", risk.p()},
           {"z_p", risk.z()},
           {"t_star", closed.t_star},
           {"objective", closed.objective},
           {"status", closed.status == HorizonStatus::ZeroHorizon ? "zero_horizon"
                                                                  : "interior"}};
  if (a.tau) {
    const OptimalHorizon discrete = optimal_steps_discrete(doc.params, *a.tau, risk);
    out["discrete"] = {{"tau", *a.tau},
                       {"m_real", *discrete.m_real},
                       {"m_star", *discrete.m_star},
                       {"t_star", discrete.t_star},
                       {"objective", discrete.objective}};
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct SimulateArgs {
  std::string params;
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  int steps = 100;
  std::optional<double> p;
  std::optional<double> horizon;
  std::string out_json;
  std::string out_csv;
};

int cmd_simulate(const SimulateArgs& a) {
  const MarketDocument doc = load_market(a.params);
  McConfig cfg;
  cfg.n_reps = a.reps;
  cfg.seed = a.seed;
  cfg.m_steps = a.steps;
  cfg.risk = risk_for(doc, a.p);
  cfg.horizon = a.horizon;

  const Schedule schedule = experiment_schedule(doc.params, cfg);
  const auto reps = run_replications(doc.params, schedule, cfg);
  const McSummary s = summarize(doc.params, schedule, cfg, reps);

  json summary{{"p", cfg.risk.p()},
               {"horizon", s.horizon},
               {"tau", s.tau},
               {"steps", s.m_steps},
               {"reps", s.n_reps},
               {"seed", s.seed},
               {"mean_cost", s.mean_cost},
               {"std_cost", s.std_cost},
               {"per_asset_mean_costs", vector_json(s.per_asset_mean_costs)},
               {"mean_cost_rate", s.mean_cost_rate},
               {"cost_rate",
                {{"min", s.cost_rate.min},
                 {"max", s.cost_rate.max},
                 {"std", s.cost_rate.std}}},
               {"expected_cost", s.expected_cost},
               {"cost_variance", s.cost_variance}};
  if (a.out_json.empty()) {
    std::cout << summary.dump(2) << '\n';
  } else {
    write_text(a.out_json, summary.dump(2) + "\n");
  }

  if (!a.out_csv.empty()) {
    std::ostringstream csv;
    csv << "rep,C";
    for (std::size_t i = 1; i <= doc.params.n(); ++i) csv << ",C" << i;
    csv << ",CPw\n";
    for (std::size_t r = 0; r < reps.size(); ++r) {
      csv << r << ',' << num(reps[r].cost);
      for (Eigen::Index i = 0; i < reps[r].per_asset_costs.size(); ++i) {
        csv << ',' << num(reps[r].per_asset_costs(i));
      }
      csv << ',' << num(reps[r].cost_rate) << '\n';
    }
    write_text(a.out_csv, csv.str());
  }
  return 0;
}

struct ScheduleArgs {
  std::string params;
  int steps = 100;
  std::optional<double> tau;
  std::optional<double> p;
  std::string out;
};

double default_tau(const MarketDocument& doc, std::optional<double> p, int steps) {
  const OptimalHorizon h = optimal_time_closed(doc.params, risk_for(doc, p));
  if (!(h.t_star > 0.0)) {
    throw DegenerateMarket("zero optimal horizon; pass --tau explicitly");
  }
  return h.t_star / steps;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

int cmd_schedule(const ScheduleArgs& a) {
  const MarketDocument doc = load_market(a.params);
  const double tau = a.tau ? *a.tau : default_tau(doc, a.p, a.steps);
  const Schedule s = linear_schedule(doc.params.x0(), a.steps, tau);
  std::ostringstream csv;
  csv << "k,t";
  for (std::size_t i = 1; i <= s.n(); ++i) csv << ",x" << i;
  csv << '\n';
  for (std::size_t k = 0; k < s.positions().size(); ++k) {
    csv << k << ',' << num(static_cast<double>(k) * tau);
    const Vector& x = s.positions()[k];
    for (Eigen::Index i = 0; i < x.size(); ++i) csv << ',' << num(x(i));
    csv << '\n';
  }
  emit(a.out, csv.str());
  return 0;
}

struct PathArgs {
  std::string params;
  int steps = 100;
  std::optional<double> tau;
  std::optional<double> p;
  std::uint64_t seed = 0;
  std::uint64_t rep = 0;
  std::string out;
};

int cmd_path(const PathArgs& a) {
  const MarketDocument doc = load_market(a.params);
  const double tau = a.tau ? *a.tau : default_tau(doc, a.p, a.steps);
  const Schedule s = linear_schedule(doc.params.x0(), a.steps, tau);
  std::vector<Vector> noise;
  NormalStream(replication_seed(a.seed, a.rep)).fill(noise, static_cast<std::size_t>(a.steps),
                                                     doc.params.n());
  const PathRealization path = simulate_path(doc.params, s, noise);

  const std::size_t n = doc.params.n();
  std::ostringstream csv;
  csv << "k";
  for (std::size_t i = 1; i <= n; ++i) csv << ",xi" << i;
  for (std::size_t i = 1; i <= n; ++i) csv << ",S" << i;
  csv << '\n';
  for (std::size_t k = 0; k < path.noise.size(); ++k) {
    csv << k + 1;
    for (Eigen::Index i = 0; i < path.noise[k].size(); ++i) csv << ',' << num(path.noise[k](i));
    for (Eigen::Index i = 0; i < path.exec_prices[k].size(); ++i) {
      csv << ',' << num(path.exec_prices[k](i));
    }
    csv << '\n';
  }
  emit(a.out, csv.str());
  std::cerr << "realized cost " << num(path.realized_cost) << '\n';
  return 0;
}

void report_failures(const SweepResult& result) {
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!result.rows[i].ok) {
      std::cerr << result.name << ": grid point " << i
                << " failed: " << result.rows[i].error << '\n';
    }
  }
}

struct SweepArgs {
  std::string spec;
  std::string out_csv;
  std::string out_svg;
  std::string svg_metric;
  std::string svg_kind;
  std::string svg_x;
};

int cmd_sweep(const SweepArgs& a) {
  const SweepSpec spec = sweep_from_json(read_json_file(a.spec));
  const SweepResult result = run_sweep(spec);
  report_failures(result);
  if (fs::path(a.out_csv).has_parent_path()) {
    fs::create_directories(fs::path(a.out_csv).parent_path());
  }
  emit_csv(result, fs::path(a.out_csv));
  if (!a.out_svg.empty()) {
    const PlotKind kind = a.svg_kind.empty()
                              ? (result.n_axes == 2 ? PlotKind::Surface : PlotKind::Line)
                              : parse_plot_kind(a.svg_kind);
    const std::string metric =
        a.svg_metric.empty() ? result.columns.back() : a.svg_metric;
    std::optional<std::string_view> x;
    if (!a.svg_x.empty()) x = a.svg_x;
    emit_svg(result, a.out_svg, kind, metric, x);
  }
  return 0;
}

struct FiguresArgs {
  std::string figure;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::size_t reps = 1000;
  int steps = 100;
};

int cmd_figures(const FiguresArgs& a) {
  std::vector<std::string> names;
  if (a.figure == "fig3") {
    names = {"fig3a", "fig3b"};
  } else if (a.figure == "all") {
    names = preset_names();
  } else {
    names = {a.figure};
  }
  fs::path dir = a.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    dir = env && *env ? fs::path(env) : fs::path(".");
  }
  fs::create_directories(dir);

  for (const auto& name : names) {
    const SweepSpec spec = preset(name, a.seed, a.reps, a.steps);
    const SweepResult result = run_sweep(spec);
    report_failures(result);
    emit_csv(result, dir / (name + ".csv"));
    write_text(dir / (name + ".json"), sweep_to_json(spec).dump(2) + "\n");
    for (const auto& plot : preset_plots(name)) {
      std::optional<std::string_view> x;
      if (plot.x_column) x = *plot.x_column;
      emit_svg(result, dir / (plot.file_stem + ".svg"), plot.kind, plot.metric, x);
    }
    std::cout << (dir / (name + ".csv")).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal liquidation horizons, execution-cost simulation and "
               "parameter sweeps for linear-impact portfolios"};
  app.require_subcommand(1);

  OptimalTimeArgs ot;
  auto* c_ot = app.add_subcommand("optimal-time", "Closed-form T* and, with --tau, the discrete optimum");
  c_ot->add_option("params", ot.params, "market parameters JSON")->required();
  c_ot->add_option("--p", ot.p, "confidence level (overrides the file's p)");
  c_ot->add_option("--tau", ot.tau, "step length for the discrete optimum");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo execution costs along the optimal linear schedule");
  c_sim->add_option("params", sim.params, "market parameters JSON")->required();
  c_sim->add_option("--reps", sim.reps, "replications")->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "master seed")->capture_default_str();
  c_sim->add_option("--steps", sim.steps, "steps per simulated horizon")->capture_default_str();
  c_sim->add_option("--p", sim.p, "confidence level");
  c_sim->add_option("--horizon", sim.horizon, "simulate this horizon instead of T*");
  c_sim->add_option("--out-json", sim.out_json, "summary JSON path (stdout if unset)");
  c_sim->add_option("--out-csv", sim.out_csv, "per-replication CSV path");

  ScheduleArgs sch;
  auto* c_sch = app.add_subcommand("schedule", "Write the linear schedule as CSV");
  c_sch->add_option("params", sch.params, "market parameters JSON")->required();
  c_sch->add_option("--steps", sch.steps, "step count M")->capture_default_str();
  c_sch->add_option("--tau", sch.tau, "step length (default T*/M)");
  c_sch->add_option("--p", sch.p, "confidence level used for T*");
  c_sch->add_option("--out", sch.out, "CSV path (stdout if unset)");

  PathArgs pa;
  auto* c_pa = app.add_subcommand("path", "Dump one simulated path (noise and execution prices) as CSV");
  c_pa->add_option("params", pa.params, "market parameters JSON")->required();
  c_pa->add_option("--steps", pa.steps, "step count M")->capture_default_str();
  c_pa->add_option("--tau", pa.tau, "step length (default T*/M)");
  c_pa->add_option("--p", pa.p, "confidence level used for T*");
  c_pa->add_option("--seed", pa.seed, "master seed")->capture_default_str();
  c_pa->add_option("--rep", pa.rep, "replication index")->capture_default_str();
  c_pa->add_option("--out", pa.out, "CSV path (stdout if unset)");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "Run a parameter sweep from a JSON spec");
  c_sw->add_option("spec", sw.spec, "sweep spec JSON")->required();
  c_sw->add_option("--out-csv", sw.out_csv, "result CSV path")->required();
  c_sw->add_option("--out-svg", sw.out_svg, "optional SVG plot path");
  c_sw->add_option("--svg-metric", sw.svg_metric, "column to plot (default: last)");
  c_sw->add_option("--svg-kind", sw.svg_kind, "surface or line (default by axis count)");
  c_sw->add_option("--svg-x", sw.svg_x, "x column for line plots (default: first axis)");

  FiguresArgs fig;
  auto* c_fig = app.add_subcommand("figures", "Regenerate a preset experiment (fig1..fig6, fig3a, fig3b, all)");
  c_fig->add_option("figure", fig.figure, "preset name")->required();
  c_fig->add_option("--seed", fig.seed, "master seed")->capture_default_str();
  c_fig->add_option("--out-dir", fig.out_dir,
                    std::string("output directory (default $") + kOutDirEnv + " or .)");
  c_fig->add_option("--reps", fig.reps, "replications per grid point")->capture_default_str();
  c_fig->add_option("--steps", fig.steps, "steps per simulated horizon")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*c_ot) return cmd_optimal_time(ot);
    if (*c_sim) return cmd_simulate(sim);
    if (*c_sch) return cmd_schedule(sch);
    if (*c_pa) return cmd_path(pa);
    if (*c_sw) return cmd_sweep(sw);
    if (*c_fig) return cmd_figures(fig);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
