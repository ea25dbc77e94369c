#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "liqsched/errors.hpp"
#include "liqsched/sweep.hpp"

namespace liqsched {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 90;
constexpr int kMarginRight = 110;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 60;
constexpr int kPlotW = kWidth - kMarginLeft - kMarginRight;
constexpr int kPlotH = kHeight - kMarginTop - kMarginBottom;

struct Rgb {
  double r, g, b;
};

// Viridis control points.
constexpr std::array<Rgb, 5> kStops = {{{68, 1, 84},
                                        {59, 82, 139},
                                        {33, 145, 140},
                                        {94, 201, 98},
                                        {253, 231, 37}}};

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string colour(double t) {
  if (std::isnan(t)) return "#cccccc";
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * static_cast<double>(kStops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), kStops.size() - 2);
  const double f = pos - static_cast<double>(i);
  auto mix = [f](double a, double b) {
    return static_cast<int>(std::lround(a + (b - a) * f));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(kStops[i].r, kStops[i + 1].r),
                mix(kStops[i].g, kStops[i + 1].g), mix(kStops[i].b, kStops[i + 1].b));
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (std::isnan(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return lo > hi; }
  // Constant data maps to the bottom of the scale.
  double unit(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.0; }
};

void header(std::ostringstream& out, std::string_view title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"14\">"
      << escape(title) << "</text>\n";
}

void axis_labels(std::ostringstream& out, std::string_view x_name,
                 const Range& xr, std::string_view y_name, const Range& yr) {
  const int x0 = kMarginLeft, y0 = kMarginTop + kPlotH;
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 + kPlotW
      << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << x0 << "\" y1=\"" << kMarginTop << "\" x2=\"" << x0
      << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << x0 << "\" y=\"" << y0 + 16 << "\">" << fmt(xr.lo)
      << "</text>\n";
  out << "<text x=\"" << x0 + kPlotW << "\" y=\"" << y0 + 16
      << "\" text-anchor=\"end\">" << fmt(xr.hi) << "</text>\n";
  out << "<text x=\"" << x0 + kPlotW / 2 << "\" y=\"" << y0 + 40
      << "\" text-anchor=\"middle\">" << escape(x_name) << "</text>\n";
  out << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 << "\" text-anchor=\"end\">"
      << fmt(yr.lo) << "</text>\n";
  out << "<text x=\"" << x0 - 6 << "\" y=\"" << kMarginTop + 10
      << "\" text-anchor=\"end\">" << fmt(yr.hi) << "</text>\n";
  out << "<text x=\"20\" y=\"" << kMarginTop + kPlotH / 2
      << "\" transform=\"rotate(-90 20 " << kMarginTop + kPlotH / 2
      << ")\" text-anchor=\"middle\">" << escape(y_name) << "</text>\n";
}

std::string surface(const SweepResult& result, std::string_view metric) {
  if (result.n_axes != 2) {
    throw UnsupportedKind("surface plots need a two-axis sweep");
  }
  const auto mc = result.column(metric);
  const std::size_t nx = result.shape[0];
  const std::size_t ny = result.shape[1];
  Range zr, xr, yr;
  for (const auto& r : result.rows) {
    zr.add(r.values[mc]);
    xr.add(r.values[0]);
    yr.add(r.values[1]);
  }

  std::ostringstream out;
  header(out, std::string(metric) + " over " + result.columns[0] + " x " +
                  result.columns[1]);
  const double cw = static_cast<double>(kPlotW) / static_cast<double>(nx);
  const double ch = static_cast<double>(kPlotH) / static_cast<double>(ny);
  for (const auto& r : result.rows) {
    const double x = kMarginLeft + cw * static_cast<double>(r.index[0]);
    const double y =
        kMarginTop + kPlotH - ch * static_cast<double>(r.index[1] + 1);
    const double z = r.values[mc];
    out << "<rect x=\"" << fmt(x, "%.3f") << "\" y=\"" << fmt(y, "%.3f")
        << "\" width=\"" << fmt(cw, "%.3f") << "\" height=\"" << fmt(ch, "%.3f")
        << "\" fill=\"" << colour(std::isnan(z) ? z : zr.unit(z)) << "\">"
        << "<title>" << fmt(z, "%.10g") << "</title></rect>\n";
  }
  axis_labels(out, result.columns[0], xr, result.columns[1], yr);

  // colour bar
  const int bx = kMarginLeft + kPlotW + 20;
  constexpr int kBands = 32;
  for (int i = 0; i < kBands; ++i) {
    const double t = (i + 0.5) / kBands;
    const double y = kMarginTop + kPlotH * (1.0 - static_cast<double>(i + 1) / kBands);
    out << "<rect x=\"" << bx << "\" y=\"" << fmt(y, "%.3f")
        << "\" width=\"16\" height=\"" << fmt(static_cast<double>(kPlotH) / kBands, "%.3f")
        << "\" fill=\"" << colour(t) << "\"/>\n";
  }
  if (!zr.empty()) {
    out << "<text x=\"" << bx + 20 << "\" y=\"" << kMarginTop + 10 << "\">"
        << fmt(zr.hi) << "</text>\n";
    out << "<text x=\"" << bx + 20 << "\" y=\"" << kMarginTop + kPlotH << "\">"
        << fmt(zr.lo) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string line(const SweepResult& result, std::string_view metric,
                 std::string_view x_column) {
  if (result.n_axes != 1) {
    throw UnsupportedKind("line plots need a one-axis sweep");
  }
  const auto yc = result.column(metric);
  const auto xc = result.column(x_column);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& v = result.rows[i].values;
    if (!std::isnan(v[xc]) && !std::isnan(v[yc])) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.rows[a].values[xc] < result.rows[b].values[xc];
  });
  Range xr, yr;
  for (auto i : order) {
    xr.add(result.rows[i].values[xc]);
    yr.add(result.rows[i].values[yc]);
  }

  std::ostringstream out;
  header(out, std::string(metric) + " against " + std::string(x_column));
  out << "<polyline fill=\"none\" stroke=\"#3b528b\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& v = result.rows[order[k]].values;
    const double px = kMarginLeft + kPlotW * xr.unit(v[xc]);
    const double py = kMarginTop + kPlotH * (1.0 - yr.unit(v[yc]));
    out << (k ? " " : "") << fmt(px, "%.3f") << ',' << fmt(py, "%.3f");
  }
  out << "\"/>\n";
  if (!xr.empty()) axis_labels(out, x_column, xr, metric, yr);
  out << "</svg>\n";
  return out.str();
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "surface") return PlotKind::Surface;
  if (name == "line") return PlotKind::Line;
  throw UnsupportedKind("unsupported plot kind '" + std::string(name) +
                        "' (expected surface or line)");
}

std::string render_svg(const SweepResult& result, PlotKind kind,
                       std::string_view metric,
                       std::optional<std::string_view> x_column) {
  switch (kind) {
    case PlotKind::Surface: return surface(result, metric);
    case PlotKind::Line:
      return line(result, metric, x_column ? *x_column : result.columns.at(0));
  }
  throw UnsupportedKind("unsupported plot kind");
}

void emit_svg(const SweepResult& result, const std::filesystem::path& path,
              PlotKind kind, std::string_view metric,
              std::optional<std::string_view> x_column) {
  const std::string svg = render_svg(result, kind, metric, x_column);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << svg;
  if (!out) throw ValidationError("failed writing " + path.string());
}

}  // namespace liqsched
