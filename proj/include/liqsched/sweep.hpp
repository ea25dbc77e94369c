#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "liqsched/market_model.hpp"
#include "liqsched/montecarlo.hpp"

namespace liqsched {

/// Address of one scalar in MarketParams, written `s0.i`, `x0.i`, `eta.i`,
/// `sigma.i.j` or `gamma.i.j` with one-based indices.
struct ParamPath {
  enum class Field { S0, X0, Eta, Sigma, Gamma };
  Field field;
  std::size_t row = 0;  ///< zero-based
  std::size_t col = 0;  ///< zero-based; matrices only

  /// Throws ValidationError for unknown fields or indices outside [1, n].
  static ParamPath parse(std::string_view text, std::size_t n);
  std::string str() const;
};

double get_parameter(const MarketParams& params, const ParamPath& path);
/// Copy of `params` with one entry replaced (revalidated).
MarketParams with_parameter(const MarketParams& params, const ParamPath& path,
                            double value);

/// A swept coordinate: start + i * step for i = 0..count-1.
struct SweepAxis {
  std::string path;
  std::string label;  ///< CSV column name; defaults to `path`
  double start = 0.0;
  double step = 0.0;
  std::size_t count = 1;

  double value(std::size_t i) const { return start + static_cast<double>(i) * step; }
};

/// A parameter solved from the others at each grid point. The only rule is
/// `row_norm`: set sigma.i.j so that row i of sigma has Euclidean norm
/// `norm` (used to hold one asset's volatility fixed).
struct DerivedParam {
  std::string path;
  std::string label;
  std::string rule = "row_norm";
  double norm = 0.0;
};

enum class Metric {
  TStar,
  Mcp,
  MeanCost,
  StdCost,
  ExpectedCost,
  CpwMin,
  CpwMax,
  CpwStd,
  RhoPaper,
  RhoStandard,
  AbsDiff,  ///< |sigma11 - sigma12|
};

std::string_view metric_name(Metric m);
Metric parse_metric(std::string_view name);
bool needs_simulation(Metric m);

struct SweepSpec {
  std::string name;
  std::string description;
  MarketParams base;
  McConfig mc;
  std::vector<SweepAxis> axes;
  std::vector<DerivedParam> derived;
  std::vector<Metric> metrics;
  /// Free-form provenance notes carried into outputs (e.g. "inferred").
  nlohmann::json metadata = nlohmann::json::object();
};

/// Checks axis counts (1 or 2 axes, count >= 1), parameter paths and rules.
void validate(const SweepSpec& spec);

struct SweepRow {
  std::vector<std::size_t> index;  ///< grid index per axis
  std::vector<double> values;      ///< axis values, derived values, metrics
  bool ok = true;
  std::string error;
};

struct SweepResult {
  std::string name;
  std::vector<std::string> columns;
  std::size_t n_axes = 0;
  std::vector<std::size_t> shape;
  std::vector<SweepRow> rows;  ///< row-major: the last axis varies fastest

  /// Column index by name; throws ValidationError when absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;
};

/// Evaluates every grid point: T* analytically, the Monte Carlo summary when
/// any requested metric needs it. A point whose covariance is not positive
/// definite (or that is otherwise degenerate) becomes a failed row with NaN
/// metrics. Grid points run in parallel with OpenMP.
SweepResult run_sweep(const SweepSpec& spec);
SweepResult run_sweep_serial(const SweepSpec& spec);

/// Minimum over all grid lines parallel to `axis` of the Spearman correlation
/// between the axis value and `metric`. NaN if any line is constant.
double min_line_spearman(const SweepResult& result, std::size_t axis,
                         std::string_view metric);
/// Spearman correlation between the sum of grid indices and `metric`.
double index_sum_spearman(const SweepResult& result, std::string_view metric);

SweepSpec sweep_from_json(const nlohmann::json& doc);
nlohmann::json sweep_to_json(const SweepSpec& spec);

/// Header row plus one row per grid point, numbers at full double precision
/// (%.17g), failed cells as `nan`.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

enum class PlotKind { Surface, Line };
PlotKind parse_plot_kind(std::string_view name);

/// Self-contained SVG. Surface: heatmap over the two axes coloured by
/// `metric`. Line: polyline of `metric` against `x_column` (the first axis
/// when unset), points ordered by x. Output bytes depend only on the input.
std::string render_svg(const SweepResult& result, PlotKind kind,
                       std::string_view metric,
                       std::optional<std::string_view> x_column = std::nullopt);
void emit_svg(const SweepResult& result, const std::filesystem::path& path,
              PlotKind kind, std::string_view metric,
              std::optional<std::string_view> x_column = std::nullopt);

// Named reproductions of the two-asset experiments.

/// x0 = (1e7, 8e6), S0 = (50, 100), eta = (3e-8, 5e-8),
/// sigma = [[0.08, 0.02], [0.1, 0.03]], gamma = [[3e-9, 1e-9], [2e-9, 5e-9]].
MarketParams reference_portfolio();

/// fig1, fig2, fig3a, fig3b, fig4, fig5, fig6.
std::vector<std::string> preset_names();
SweepSpec preset(std::string_view name, std::uint64_t seed,
                 std::size_t n_reps = 1000, int m_steps = 100);

/// The plots written next to a preset's CSV by `liqsched figures`.
struct PlotRequest {
  std::string file_stem;
  PlotKind kind;
  std::string metric;
  std::optional<std::string> x_column;
};
std::vector<PlotRequest> preset_plots(std::string_view name);

}  // namespace liqsched
