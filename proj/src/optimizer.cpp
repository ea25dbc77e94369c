#include "liqsched/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liqsched/cost_engine.hpp"
#include "liqsched/errors.hpp"

namespace liqsched {

namespace {

constexpr double kRootTolerance = 1e-10;

void check_risk(const RiskLevel& risk) {
  if (!(risk.z() > 0.0)) {
    throw DegenerateRisk("z_p must be positive for an interior optimum, got " +
                         std::to_string(risk.z()));
  }
}

double checked_risk_form(const MarketParams& params) {
  const double q = params.risk_form(params.x0());
  if (!(q > 0.0)) {
    throw DegenerateMarket("portfolio variance x0'Sigma x0 must be positive");
  }
  return q;
}

// f(lo) < 0 <= f(hi); shrinks [lo, hi] until it is narrower than tol.
template <typename F>
double bisect(F f, double lo, double hi, double tol) {
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace

OptimalHorizon optimal_time_closed(const MarketParams& params,
                                   const RiskLevel& risk) {
  check_risk(risk);
  const double q = checked_risk_form(params);
  const double e = params.eta_form(params.x0());
  const double g = params.gamma_form(params.x0());

  OptimalHorizon out;
  if (e == 0.0) {
    out.status = HorizonStatus::ZeroHorizon;
    out.t_star = 0.0;
    out.objective = 0.5 * g;
    return out;
  }
  const double ratio = 2.0 * std::sqrt(3.0) * e / (risk.z() * std::sqrt(q));
  out.t_star = std::pow(ratio, 2.0 / 3.0);
  out.objective =
      0.5 * g + e / out.t_star + risk.z() * std::sqrt(out.t_star * q / 3.0);
  return out;
}

double optimal_time_two_asset(const TwoAssetInputs& in) {
  if (!(in.z > 0.0)) throw DegenerateRisk("z_p must be positive");
  const double numer =
      2.0 * std::sqrt(3.0) * (in.x1 * in.x1 * in.eta1 + in.x2 * in.x2 * in.eta2);
  const double spread =
      in.x1 * in.x1 * (in.s11 * in.s11 + in.s12 * in.s12) +
      2.0 * in.x1 * in.x2 * (in.s11 * in.s21 + in.s12 * in.s22) +
      in.x2 * in.x2 * (in.s21 * in.s21 + in.s22 * in.s22);
  if (!(spread > 0.0)) {
    throw DegenerateMarket("portfolio variance must be positive");
  }
  if (numer == 0.0) return 0.0;
  return std::pow(numer / (in.z * std::sqrt(spread)), 2.0 / 3.0);
}

double foc_lhs(const MarketParams& params, double tau, const RiskLevel& risk) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidTau("step length must be positive, got " + std::to_string(tau));
  }
  check_risk(risk);
  const double q = checked_risk_form(params);
  const Vector& x0 = params.x0();
  const double impact = 0.5 * params.gamma_form(x0) + params.eta_form(x0) / tau;
  return std::sqrt(3.0) * impact / (risk.z() * std::sqrt(tau * q));
}

double foc_rhs(double m) {
  return (m * m - 0.5) / (2.0 * std::sqrt(m + 0.5 / m + 1.5));
}

OptimalHorizon optimal_steps_discrete(const MarketParams& params, double tau,
                                      const RiskLevel& risk) {
  const double lhs = foc_lhs(params, tau, risk);
  auto f = [lhs](double m) { return foc_rhs(m) - lhs; };
  if (f(1.0) > 0.0) {
    throw NoInteriorMinimum(
        "VaR increases from M = 1; immediate liquidation is optimal");
  }

  double lo = 1.0;
  double hi = 2.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw DegenerateMarket("first-order condition has no finite root");
    }
  }
  const double root = f(lo) == 0.0 ? lo : bisect(f, lo, hi, kRootTolerance);

  if (root >= static_cast<double>(std::numeric_limits<int>::max())) {
    throw DegenerateMarket("optimal step count overflows; increase tau");
  }
  const double below = std::max(1.0, std::floor(root));
  const double above = std::max(1.0, std::ceil(root));
  const double var_below = var_p_linear(params, below, tau, risk);
  const double var_above = var_p_linear(params, above, tau, risk);
  const bool take_below = var_below <= var_above;

  OptimalHorizon out;
  out.m_real = root;
  out.m_star = static_cast<int>(take_below ? below : above);
  out.t_star = tau * *out.m_star;
  out.objective = take_below ? var_below : var_above;
  return out;
}

}  // namespace liqsched
