#pragma once

#include <span>
#include <vector>

#include "liqsched/market_model.hpp"
#include "liqsched/schedule.hpp"

namespace liqsched {

/// One simulated execution. `noise[k-1]` and `exec_prices[k-1]` belong to
/// step k. `per_asset_costs(i)` is x0^i S0^i - sum_k delta_k^i S~_k^i and
/// `realized_cost` is their sum.
struct PathRealization {
  std::vector<Vector> noise;
  std::vector<Vector> exec_prices;
  Vector per_asset_costs;
  double realized_cost = 0.0;
};

struct CostMoments {
  double mean = 0.0;
  double variance = 0.0;
  double var_p = 0.0;
};

/// Walks the discrete price recursion
///   S_k  = S_{k-1} + sqrt(tau) sigma xi_k            (fundamental)
///   S~_k = S_k - gamma sum_{j<=k} delta_j - eta v_k   (execution price)
/// and books the liquidation cost from the execution prices.
PathRealization simulate_path(const MarketParams& params,
                              const Schedule& schedule,
                              std::span<const Vector> noise);

/// Allocation-free variant for hot loops: reuses the buffers in `out`.
void simulate_path_into(const MarketParams& params, const Schedule& schedule,
                        std::span<const Vector> noise, PathRealization& out);

/// Realized cost from the telescoped closed form
///   C = -sqrt(tau) sum_k x_{k-1}' sigma xi_k + x0' gs x0 / 2
///       + sum_k delta_k' (gs / 2 + eta / tau) delta_k,
/// where gs = (gamma + gamma') / 2. With an asymmetric gamma the direct walk
/// agrees with this form when every trade is parallel to the amount already
/// sold (linear and other x_k = c_k x0 schedules); otherwise it differs by
/// sum_k delta_k' (gamma - gamma')/2 (x0 - x_{k-1}).
double realized_cost_closed(const MarketParams& params, const Schedule& schedule,
                            std::span<const Vector> noise);

double expected_cost(const MarketParams& params, const Schedule& schedule);
double cost_variance(const MarketParams& params, const Schedule& schedule);

/// E[C] + z_p sqrt(V[C])
CostMoments var_p(const MarketParams& params, const Schedule& schedule,
                  const RiskLevel& risk);

/// VaR of the linear schedule with `steps` steps of length `tau`, evaluated
/// without building the schedule:
///   x0'gx0/2 + x0'gx0/(2M) + x0'eta x0/(tau M)
///   + z sqrt(tau x0'Sigma x0 (M/3)(1 + 1/M)(1 + 1/(2M)))
double var_p_linear(const MarketParams& params, double steps, double tau,
                    const RiskLevel& risk);

}  // namespace liqsched
