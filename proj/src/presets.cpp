#include <string>

#include "liqsched/errors.hpp"
#include "liqsched/sweep.hpp"

namespace liqsched {

namespace {

using nlohmann::json;

SweepAxis axis(std::string path, std::string label, double start, double step,
               std::size_t count) {
  return SweepAxis{std::move(path), std::move(label), start, step, count};
}

MarketParams with_sigma(const MarketParams& base, double s11, double s12,
                        double s21, double s22) {
  Matrix sigma(2, 2);
  sigma << s11, s12, s21, s22;
  return MarketParams(base.s0(), base.x0(), sigma, base.gamma(), base.eta());
}

// Asset 1 volatility held at 0.5 while sigma11 walks 0.04 .. 0.436 and
// sigma12 absorbs the rest; asset 2 components both 0.01.
SweepSpec fixed_volatility_grid(SweepSpec spec) {
  spec.base = with_sigma(spec.base, 0.04, 0.0, 0.01, 0.01);
  spec.axes = {axis("sigma.1.1", "sigma11", 0.04, 0.004, 100)};
  spec.derived = {DerivedParam{"sigma.1.2", "sigma12", "row_norm", 0.5}};
  spec.metadata["note"] =
      "asset-1 volatility fixed at 0.5, not 0.4: 0.5 gives a starting "
      "rho_paper of 0.7614 and a t_star floor near 1.48";
  return spec;
}

}  // namespace

MarketParams reference_portfolio() {
  Vector s0(2), x0(2), eta(2);
  s0 << 50.0, 100.0;
  x0 << 1e7, 8e6;
  eta << 3e-8, 5e-8;
  Matrix sigma(2, 2), gamma(2, 2);
  sigma << 0.08, 0.02, 0.1, 0.03;
  gamma << 3e-9, 1e-9, 2e-9, 5e-9;
  return MarketParams(s0, x0, sigma, gamma, eta);
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6"};
}

SweepSpec preset(std::string_view name, std::uint64_t seed, std::size_t n_reps,
                 int m_steps) {
  McConfig mc;
  mc.seed = seed;
  mc.n_reps = n_reps;
  mc.m_steps = m_steps;
  SweepSpec spec{std::string(name), "", reference_portfolio(), mc, {}, {}, {},
                 json{{"preset_version", 1}}};

  if (name == "fig1") {
    spec.description = "temporary impact grid: optimal time and mean cost rate";
    spec.axes = {axis("eta.1", "eta1", 3e-8, 3e-9, 11),
                 axis("eta.2", "eta2", 5e-8, 5e-9, 11)};
    spec.metrics = {Metric::TStar, Metric::Mcp};
  } else if (name == "fig2") {
    spec.description = "asset-1 volatility components: optimal time and mean cost rate";
    spec.axes = {axis("sigma.1.1", "sigma11", 0.08, 0.008, 11),
                 axis("sigma.1.2", "sigma12", 0.02, 0.002, 11)};
    spec.metrics = {Metric::TStar, Metric::Mcp};
  } else if (name == "fig3a") {
    spec.description = "asset-1 volatility components: correlation coefficient";
    spec.axes = {axis("sigma.1.1", "sigma11", 0.08, 0.008, 11),
                 axis("sigma.1.2", "sigma12", 0.02, 0.002, 11)};
    spec.metrics = {Metric::RhoPaper, Metric::RhoStandard};
  } else if (name == "fig3b") {
    spec.description = "asset-2 volatility components: correlation coefficient";
    spec.axes = {axis("sigma.2.1", "sigma21", 0.1, 0.01, 11),
                 axis("sigma.2.2", "sigma22", 0.03, 0.003, 11)};
    spec.metrics = {Metric::RhoPaper, Metric::RhoStandard};
    spec.metadata["grid"] =
        "inferred: +10% steps from (0.1, 0.03), chosen so the corners give "
        "the correlation extremes 0.38 and 0.71";
  } else if (name == "fig4") {
    spec.description = "|sigma11 - sigma12| against correlation and optimal time";
    spec = fixed_volatility_grid(std::move(spec));
    spec.metrics = {Metric::AbsDiff, Metric::RhoPaper, Metric::TStar};
  } else if (name == "fig5") {
    spec.description = "correlation against optimal time and mean cost rate";
    spec = fixed_volatility_grid(std::move(spec));
    spec.metrics = {Metric::RhoPaper, Metric::TStar, Metric::Mcp};
  } else if (name == "fig6") {
    spec.description = "cross permanent impact grid: mean cost rate";
    spec.axes = {axis("gamma.1.2", "gamma12", 1e-9, 1e-10, 11),
                 axis("gamma.2.1", "gamma21", 2e-9, 2e-10, 11)};
    spec.metrics = {Metric::TStar, Metric::Mcp};
  } else {
    throw ValidationError("unknown preset '" + std::string(name) + "'");
  }
  validate(spec);
  return spec;
}

std::vector<PlotRequest> preset_plots(std::string_view name) {
  if (name == "fig1" || name == "fig2") {
    return {{std::string(name) + "_t_star", PlotKind::Surface, "t_star", {}},
            {std::string(name) + "_mcp", PlotKind::Surface, "mcp", {}}};
  }
  if (name == "fig3a" || name == "fig3b") {
    return {{std::string(name) + "_rho_paper", PlotKind::Surface, "rho_paper", {}}};
  }
  if (name == "fig4") {
    return {{"fig4_rho_paper", PlotKind::Line, "rho_paper", "absdiff"},
            {"fig4_t_star", PlotKind::Line, "t_star", "absdiff"}};
  }
  if (name == "fig5") {
    return {{"fig5_t_star", PlotKind::Line, "t_star", "rho_paper"},
            {"fig5_mcp", PlotKind::Line, "mcp", "rho_paper"}};
  }
  if (name == "fig6") {
    return {{"fig6_mcp", PlotKind::Surface, "mcp", {}}};
  }
  throw ValidationError("unknown preset '" + std::string(name) + "'");
}

}  // namespace liqsched
