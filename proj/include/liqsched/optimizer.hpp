#pragma once

#include <optional>

#include "liqsched/market_model.hpp"

namespace liqsched {

enum class HorizonStatus {
  Interior,     ///< VaR has an interior minimum at t_star
  ZeroHorizon,  ///< no temporary impact: liquidate immediately (t_star = 0)
};

struct OptimalHorizon {
  double t_star = 0.0;
  /// Integer step count for discrete solutions.
  std::optional<int> m_star;
  /// Real root of the first-order condition, when solved discretely.
  std::optional<double> m_real;
  /// VaR at the optimum. For the closed form this is the continuous-time
  /// limit x0'g x0/2 + x0'eta x0/T + z sqrt(T x0'Sigma x0 / 3).
  double objective = 0.0;
  HorizonStatus status = HorizonStatus::Interior;
};

/// T* = (2 sqrt(3) x0'eta x0 / (z_p sqrt(x0'Sigma x0)))^(2/3).
///
/// Independent of the permanent impact matrix. Throws DegenerateRisk when
/// z_p <= 0 and DegenerateMarket when x0'Sigma x0 <= 0; returns a
/// ZeroHorizon result when x0'eta x0 == 0.
OptimalHorizon optimal_time_closed(const MarketParams& params,
                                   const RiskLevel& risk);

/// Scalar two-asset inputs, laid out the way the figure presets sweep them.
struct TwoAssetInputs {
  double x1 = 0.0, x2 = 0.0;
  double eta1 = 0.0, eta2 = 0.0;
  double s11 = 0.0, s12 = 0.0, s21 = 0.0, s22 = 0.0;
  double z = 0.0;
};

/// The closed-form horizon written out term by term for two assets.
double optimal_time_two_asset(const TwoAssetInputs& in);

/// Left-hand side of the discrete first-order condition,
///   sqrt(3) x0'(gs/2 + eta/tau) x0 / (z sqrt(tau x0'Sigma x0)).
double foc_lhs(const MarketParams& params, double tau, const RiskLevel& risk);

/// Right-hand side (M^2 - 1/2) / (2 sqrt(M + 1/(2M) + 3/2)); strictly
/// increasing on M >= 1.
double foc_rhs(double m);

/// Optimal step count at fixed tau. Solves the first-order condition for
/// real M >= 1 by bracketing and bisection, then keeps whichever of
/// floor(M*) and ceil(M*) has the lower VaR (ties go to the smaller M).
///
/// Throws NoInteriorMinimum if VaR is already increasing at M = 1.
OptimalHorizon optimal_steps_discrete(const MarketParams& params, double tau,
                                      const RiskLevel& risk);

}  // namespace liqsched
