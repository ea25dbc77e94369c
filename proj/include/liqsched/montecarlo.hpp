#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "liqsched/market_model.hpp"
#include "liqsched/schedule.hpp"

namespace liqsched {

struct McConfig {
  std::size_t n_reps = 1000;
  std::uint64_t seed = 0;
  /// Number of steps the simulated horizon is cut into.
  int m_steps = 100;
  RiskLevel risk = RiskLevel::from_probability(kDefaultConfidence);
  /// Simulated horizon; the closed-form optimum T* when unset.
  std::optional<double> horizon;
};

struct Replication {
  double cost = 0.0;
  Vector per_asset_costs;
  /// cost / (x0' S0)
  double cost_rate = 0.0;
};

struct SampleStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation (n - 1 denominator)
};

struct McSummary {
  double horizon = 0.0;
  double tau = 0.0;
  int m_steps = 0;
  std::size_t n_reps = 0;
  std::uint64_t seed = 0;

  double mean_cost = 0.0;
  double std_cost = 0.0;
  Vector per_asset_mean_costs;
  /// Mean of the per-replication cost rates.
  double mean_cost_rate = 0.0;
  SampleStats cost_rate;

  /// Analytic moments of the same schedule, for side-by-side reporting.
  double expected_cost = 0.0;
  double cost_variance = 0.0;
};

/// sum_i C^i / (x0' S0). Throws ZeroNotional unless x0' S0 > 0.
double cost_rate(const Vector& per_asset_costs, const MarketParams& params);

/// The linear schedule the experiment simulates: `cfg.m_steps` steps over
/// `cfg.horizon` (or T*). Throws DegenerateMarket for a zero horizon.
Schedule experiment_schedule(const MarketParams& params, const McConfig& cfg);

/// Simulates replication `rep`; its noise comes from
/// NormalStream(replication_seed(seed, rep)) alone.
Replication simulate_replication(const MarketParams& params,
                                 const Schedule& schedule, std::uint64_t seed,
                                 std::uint64_t rep);

/// OpenMP kernel. Output slot r always holds replication r, so the result is
/// bit-identical to run_replications_serial for any thread count.
std::vector<Replication> run_replications(const MarketParams& params,
                                          const Schedule& schedule,
                                          const McConfig& cfg);
std::vector<Replication> run_replications_serial(const MarketParams& params,
                                                 const Schedule& schedule,
                                                 const McConfig& cfg);

/// Reduces replications in index order.
McSummary summarize(const MarketParams& params, const Schedule& schedule,
                    const McConfig& cfg, const std::vector<Replication>& reps);

McSummary run_experiment(const MarketParams& params, const McConfig& cfg);
McSummary run_experiment_serial(const MarketParams& params, const McConfig& cfg);

}  // namespace liqsched
