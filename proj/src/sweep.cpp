#include "liqsched/sweep.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "liqsched/errors.hpp"
#include "liqsched/optimizer.hpp"
#include "liqsched/params_io.hpp"
#include "liqsched/stats.hpp"

namespace liqsched {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MetricInfo {
  Metric metric;
  std::string_view name;
  bool simulated;
};

constexpr MetricInfo kMetrics[] = {
    {Metric::TStar, "t_star", false},
    {Metric::Mcp, "mcp", true},
    {Metric::MeanCost, "mean_cost", true},
    {Metric::StdCost, "std_cost", true},
    {Metric::ExpectedCost, "expected_cost", true},
    {Metric::CpwMin, "cpw_min", true},
    {Metric::CpwMax, "cpw_max", true},
    {Metric::CpwStd, "cpw_std", true},
    {Metric::RhoPaper, "rho_paper", false},
    {Metric::RhoStandard, "rho_standard", false},
    {Metric::AbsDiff, "absdiff", false},
};

const MetricInfo& info(Metric m) {
  for (const auto& mi : kMetrics) {
    if (mi.metric == m) return mi;
  }
  throw ValidationError("unknown metric");
}

std::size_t parse_index(std::string_view text, std::size_t n,
                        std::string_view full) {
  std::size_t value = 0;
  if (text.empty()) throw ValidationError("bad parameter path '" + std::string(full) + "'");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw ValidationError("bad parameter path '" + std::string(full) + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  if (value < 1 || value > n) {
    throw ValidationError("index in parameter path '" + std::string(full) +
                          "' outside [1, " + std::to_string(n) + "]");
  }
  return value - 1;
}

std::vector<std::string_view> split_dots(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    parts.push_back(text.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

bool is_matrix(ParamPath::Field f) {
  return f == ParamPath::Field::Sigma || f == ParamPath::Field::Gamma;
}

std::size_t grid_size(const SweepSpec& spec) {
  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= a.count;
  return total;
}

std::vector<std::size_t> unravel(std::size_t flat, const SweepSpec& spec) {
  std::vector<std::size_t> index(spec.axes.size());
  for (std::size_t a = spec.axes.size(); a-- > 0;) {
    index[a] = flat % spec.axes[a].count;
    flat /= spec.axes[a].count;
  }
  return index;
}

MarketParams apply_derived(const MarketParams& params, const DerivedParam& d,
                           double& value_out) {
  const auto path = ParamPath::parse(d.path, params.n());
  const auto row = static_cast<Eigen::Index>(path.row);
  const auto col = static_cast<Eigen::Index>(path.col);
  double others = 0.0;
  for (Eigen::Index j = 0; j < params.sigma().cols(); ++j) {
    if (j != col) others += params.sigma()(row, j) * params.sigma()(row, j);
  }
  const double rest = d.norm * d.norm - others;
  if (rest < 0.0) {
    throw DegenerateVolatility("row norm " + std::to_string(d.norm) +
                               " is smaller than the fixed components of " +
                               d.path);
  }
  value_out = std::sqrt(rest);
  return with_parameter(params, path, value_out);
}

SweepRow evaluate_point(const SweepSpec& spec, std::size_t flat,
                        std::size_t n_columns) {
  SweepRow row;
  row.index = unravel(flat, spec);
  row.values.assign(n_columns, kNaN);
  std::size_t col = 0;
  try {
    MarketParams params = spec.base;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const double v = spec.axes[a].value(row.index[a]);
      row.values[col++] = v;
      params = with_parameter(params, ParamPath::parse(spec.axes[a].path, params.n()), v);
    }
    for (const auto& d : spec.derived) {
      double v = kNaN;
      params = apply_derived(params, d, v);
      row.values[col++] = v;
    }
    cholesky(covariance(params));

    bool simulate = false;
    for (Metric m : spec.metrics) simulate = simulate || needs_simulation(m);
    const OptimalHorizon horizon = optimal_time_closed(params, spec.mc.risk);
    std::optional<McSummary> mc;
    if (simulate) {
      McConfig cfg = spec.mc;
      cfg.horizon = horizon.t_star;
      mc = run_experiment_serial(params, cfg);
    }

    for (Metric m : spec.metrics) {
      double v = kNaN;
      switch (m) {
        case Metric::TStar: v = horizon.t_star; break;
        case Metric::Mcp: v = mc->mean_cost_rate; break;
        case Metric::MeanCost: v = mc->mean_cost; break;
        case Metric::StdCost: v = mc->std_cost; break;
        case Metric::ExpectedCost: v = mc->expected_cost; break;
        case Metric::CpwMin: v = mc->cost_rate.min; break;
        case Metric::CpwMax: v = mc->cost_rate.max; break;
        case Metric::CpwStd: v = mc->cost_rate.std; break;
        case Metric::RhoPaper: v = correlation_paper(params); break;
        case Metric::RhoStandard: v = correlation_standard(params); break;
        case Metric::AbsDiff:
          v = std::abs(params.sigma()(0, 0) - params.sigma()(0, 1));
          break;
      }
      row.values[col++] = v;
    }
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
    const std::size_t metric_start = n_columns - spec.metrics.size();
    for (std::size_t c = metric_start; c < n_columns; ++c) {
      row.values[c] = kNaN;
    }
  }
  return row;
}

SweepResult make_result_shell(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.name = spec.name;
  result.n_axes = spec.axes.size();
  for (const auto& a : spec.axes) {
    result.columns.push_back(a.label.empty() ? a.path : a.label);
    result.shape.push_back(a.count);
  }
  for (const auto& d : spec.derived) {
    result.columns.push_back(d.label.empty() ? d.path : d.label);
  }
  for (Metric m : spec.metrics) result.columns.emplace_back(metric_name(m));
  result.rows.resize(grid_size(spec));
  return result;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Flat indices of each grid line running along `axis`.
std::vector<std::vector<std::size_t>> grid_lines(const SweepResult& result,
                                                 std::size_t axis) {
  if (axis >= result.n_axes) throw IndexOutOfRange("axis out of range");
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < result.n_axes; ++a) stride *= result.shape[a];
  const std::size_t len = result.shape[axis];
  std::vector<std::vector<std::size_t>> lines;
  for (std::size_t flat = 0; flat < result.rows.size(); ++flat) {
    if (result.rows[flat].index[axis] != 0) continue;
    std::vector<std::size_t> line;
    for (std::size_t i = 0; i < len; ++i) line.push_back(flat + i * stride);
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

ParamPath ParamPath::parse(std::string_view text, std::size_t n) {
  const auto parts = split_dots(text);
  ParamPath p{};
  const auto field = parts.front();
  if (field == "s0") {
    p.field = Field::S0;
  } else if (field == "x0") {
    p.field = Field::X0;
  } else if (field == "eta") {
    p.field = Field::Eta;
  } else if (field == "sigma") {
    p.field = Field::Sigma;
  } else if (field == "gamma") {
    p.field = Field::Gamma;
  } else {
    throw ValidationError("unknown parameter '" + std::string(field) +
                          "' in path '" + std::string(text) + "'");
  }
  const std::size_t want = is_matrix(p.field) ? 3 : 2;
  if (parts.size() != want) {
    throw ValidationError("parameter path '" + std::string(text) + "' needs " +
                          std::to_string(want - 1) + " index(es)");
  }
  p.row = parse_index(parts[1], n, text);
  if (want == 3) p.col = parse_index(parts[2], n, text);
  return p;
}

std::string ParamPath::str() const {
  static constexpr const char* kNames[] = {"s0", "x0", "eta", "sigma", "gamma"};
  std::string out = kNames[static_cast<int>(field)];
  out += "." + std::to_string(row + 1);
  if (is_matrix(field)) out += "." + std::to_string(col + 1);
  return out;
}

double get_parameter(const MarketParams& params, const ParamPath& path) {
  const auto r = static_cast<Eigen::Index>(path.row);
  const auto c = static_cast<Eigen::Index>(path.col);
  switch (path.field) {
    case ParamPath::Field::S0: return params.s0()(r);
    case ParamPath::Field::X0: return params.x0()(r);
    case ParamPath::Field::Eta: return params.eta()(r);
    case ParamPath::Field::Sigma: return params.sigma()(r, c);
    case ParamPath::Field::Gamma: return params.gamma()(r, c);
  }
  throw ValidationError("bad parameter path");
}

MarketParams with_parameter(const MarketParams& params, const ParamPath& path,
                            double value) {
  Vector s0 = params.s0();
  Vector x0 = params.x0();
  Matrix sigma = params.sigma();
  Matrix gamma = params.gamma();
  Vector eta = params.eta();
  const auto r = static_cast<Eigen::Index>(path.row);
  const auto c = static_cast<Eigen::Index>(path.col);
  switch (path.field) {
    case ParamPath::Field::S0: s0(r) = value; break;
    case ParamPath::Field::X0: x0(r) = value; break;
    case ParamPath::Field::Eta: eta(r) = value; break;
    case ParamPath::Field::Sigma: sigma(r, c) = value; break;
    case ParamPath::Field::Gamma: gamma(r, c) = value; break;
  }
  return MarketParams(std::move(s0), std::move(x0), std::move(sigma),
                      std::move(gamma), std::move(eta));
}

std::string_view metric_name(Metric m) { return info(m).name; }

Metric parse_metric(std::string_view name) {
  for (const auto& mi : kMetrics) {
    if (mi.name == name) return mi.metric;
  }
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

bool needs_simulation(Metric m) { return info(m).simulated; }

void validate(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw ValidationError("a sweep needs one or two axes");
  }
  const auto n = spec.base.n();
  for (const auto& a : spec.axes) {
    ParamPath::parse(a.path, n);
    if (a.count < 1) throw ValidationError("axis '" + a.path + "' needs count >= 1");
    if (!std::isfinite(a.start) || !std::isfinite(a.step)) {
      throw ValidationError("axis '" + a.path + "' has non-finite start/step");
    }
  }
  for (const auto& d : spec.derived) {
    const auto p = ParamPath::parse(d.path, n);
    if (d.rule != "row_norm") {
      throw ValidationError("unknown derived-parameter rule '" + d.rule + "'");
    }
    if (p.field != ParamPath::Field::Sigma) {
      throw ValidationError("row_norm applies to sigma entries only");
    }
    if (!(d.norm > 0.0)) throw ValidationError("row_norm needs a positive norm");
  }
  for (Metric m : spec.metrics) {
    if ((m == Metric::RhoPaper || m == Metric::RhoStandard) && n != 2) {
      throw DimensionError("correlation metrics need a two-asset market");
    }
  }
  if (spec.mc.n_reps < 1 || spec.mc.m_steps < 1) {
    throw ValidationError("sweep Monte Carlo config needs reps >= 1, steps >= 1");
  }
}

std::size_t SweepResult::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ValidationError("no column '" + std::string(name) + "'");
}

std::vector<double> SweepResult::column_values(std::string_view name) const {
  const auto c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.values[c]);
  return out;
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
  SweepResult result = make_result_shell(spec);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    result.rows[i] = evaluate_point(spec, i, result.columns.size());
  }
  return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
  SweepResult result = make_result_shell(spec);
  const auto n = static_cast<std::int64_t>(result.rows.size());
  const std::size_t n_columns = result.columns.size();
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    result.rows[static_cast<std::size_t>(i)] =
        evaluate_point(spec, static_cast<std::size_t>(i), n_columns);
  }
  return result;
}

double min_line_spearman(const SweepResult& result, std::size_t axis,
                         std::string_view metric) {
  const auto mc = result.column(metric);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& line : grid_lines(result, axis)) {
    std::vector<double> x, y;
    for (auto flat : line) {
      x.push_back(static_cast<double>(result.rows[flat].index[axis]));
      y.push_back(result.rows[flat].values[mc]);
    }
    const double rho = spearman(x, y);
    if (std::isnan(rho)) return kNaN;
    worst = std::min(worst, rho);
  }
  return worst;
}

double index_sum_spearman(const SweepResult& result, std::string_view metric) {
  const auto mc = result.column(metric);
  std::vector<double> x, y;
  for (const auto& r : result.rows) {
    double s = 0.0;
    for (auto i : r.index) s += static_cast<double>(i);
    x.push_back(s);
    y.push_back(r.values[mc]);
  }
  return spearman(x, y);
}

SweepSpec sweep_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("sweep spec must be a JSON object");
  auto it = doc.find("params");
  if (it == doc.end()) throw ValidationError("sweep spec is missing 'params'");
  MarketDocument market = market_from_json(*it);

  McConfig mc;
  mc.risk = market.risk;
  if (auto m = doc.find("mc"); m != doc.end()) {
    mc.n_reps = m->value("reps", mc.n_reps);
    mc.seed = m->value("seed", mc.seed);
    mc.m_steps = m->value("steps", mc.m_steps);
  }

  SweepSpec spec{doc.value("name", std::string("sweep")),
                 doc.value("description", std::string()),
                 market.params,
                 mc,
                 {},
                 {},
                 {},
                 doc.value("metadata", json::object())};
  try {
    for (const auto& a : doc.at("axes")) {
      SweepAxis axis;
      axis.path = a.at("path").get<std::string>();
      axis.label = a.value("label", axis.path);
      axis.start = a.at("start").get<double>();
      axis.step = a.value("step", 0.0);
      const auto count = a.value("count", std::int64_t{1});
      if (count < 1) throw ValidationError("axis '" + axis.path + "' needs count >= 1");
      axis.count = static_cast<std::size_t>(count);
      spec.axes.push_back(axis);
    }
    if (auto d = doc.find("derived"); d != doc.end()) {
      for (const auto& e : *d) {
        DerivedParam dp;
        dp.path = e.at("path").get<std::string>();
        dp.label = e.value("label", dp.path);
        dp.rule = e.value("rule", std::string("row_norm"));
        dp.norm = e.at("norm").get<double>();
        spec.derived.push_back(dp);
      }
    }
    for (const auto& m : doc.value("metrics", json::array({"t_star"}))) {
      spec.metrics.push_back(parse_metric(m.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed sweep spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

json sweep_to_json(const SweepSpec& spec) {
  json axes = json::array();
  for (const auto& a : spec.axes) {
    axes.push_back({{"path", a.path},
                    {"label", a.label},
                    {"start", a.start},
                    {"step", a.step},
                    {"count", a.count}});
  }
  json derived = json::array();
  for (const auto& d : spec.derived) {
    derived.push_back(
        {{"path", d.path}, {"label", d.label}, {"rule", d.rule}, {"norm", d.norm}});
  }
  json metrics = json::array();
  for (Metric m : spec.metrics) metrics.push_back(std::string(metric_name(m)));
  return json{{"name", spec.name},
              {"description", spec.description},
              {"params", market_to_json(spec.base, spec.mc.risk)},
              {"mc",
               {{"reps", spec.mc.n_reps},
                {"seed", spec.mc.seed},
                {"steps", spec.mc.m_steps}}},
              {"axes", axes},
              {"derived", derived},
              {"metrics", metrics},
              {"metadata", spec.metadata}};
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    out << (c ? "," : "") << result.columns[c];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.values.size(); ++c) {
      out << (c ? "," : "") << format_number(row.values[c]);
    }
    out << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ostringstream buf;
  emit_csv(result, buf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << buf.str();
  if (!out) throw ValidationError("failed writing " + path.string());
}

}  // namespace liqsched
