#include "liqsched/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "liqsched/cost_engine.hpp"
#include "liqsched/errors.hpp"
#include "liqsched/optimizer.hpp"
#include "liqsched/rng.hpp"

namespace liqsched {

namespace {

struct Workspace {
  std::vector<Vector> noise;
  PathRealization path;
};

void check_config(const McConfig& cfg) {
  if (cfg.n_reps < 1) throw ValidationError("replication count must be >= 1");
  if (cfg.m_steps < 1) {
    throw InvalidStepCount("simulation step count must be >= 1");
  }
}

Replication replicate(const MarketParams& params, const Schedule& schedule,
                      std::uint64_t seed, std::uint64_t rep, Workspace& ws) {
  NormalStream stream(replication_seed(seed, rep));
  stream.fill(ws.noise, static_cast<std::size_t>(schedule.steps()), params.n());
  simulate_path_into(params, schedule, ws.noise, ws.path);
  Replication out;
  out.per_asset_costs = ws.path.per_asset_costs;
  out.cost = ws.path.realized_cost;
  out.cost_rate = out.cost / params.notional();
  return out;
}

}  // namespace

double cost_rate(const Vector& per_asset_costs, const MarketParams& params) {
  if (static_cast<std::size_t>(per_asset_costs.size()) != params.n()) {
    throw DimensionError("per-asset cost vector does not match asset count");
  }
  const double notional = params.notional();
  if (!(notional > 0.0)) {
    throw ZeroNotional("portfolio notional x0'S0 must be positive");
  }
  return per_asset_costs.sum() / notional;
}

Schedule experiment_schedule(const MarketParams& params, const McConfig& cfg) {
  check_config(cfg);
  const double horizon =
      cfg.horizon ? *cfg.horizon : optimal_time_closed(params, cfg.risk).t_star;
  if (!(horizon > 0.0)) {
    throw DegenerateMarket("zero liquidation horizon; nothing to simulate");
  }
  return linear_schedule(params.x0(), cfg.m_steps, horizon / cfg.m_steps);
}

Replication simulate_replication(const MarketParams& params,
                                 const Schedule& schedule, std::uint64_t seed,
                                 std::uint64_t rep) {
  if (!(params.notional() > 0.0)) {
    throw ZeroNotional("portfolio notional x0'S0 must be positive");
  }
  Workspace ws;
  return replicate(params, schedule, seed, rep, ws);
}

std::vector<Replication> run_replications_serial(const MarketParams& params,
                                                 const Schedule& schedule,
                                                 const McConfig& cfg) {
  check_config(cfg);
  if (!(params.notional() > 0.0)) {
    throw ZeroNotional("portfolio notional x0'S0 must be positive");
  }
  std::vector<Replication> out(cfg.n_reps);
  Workspace ws;
  for (std::size_t r = 0; r < cfg.n_reps; ++r) {
    out[r] = replicate(params, schedule, cfg.seed, r, ws);
  }
  return out;
}

std::vector<Replication> run_replications(const MarketParams& params,
                                          const Schedule& schedule,
                                          const McConfig& cfg) {
  check_config(cfg);
  if (!(params.notional() > 0.0)) {
    throw ZeroNotional("portfolio notional x0'S0 must be positive");
  }
  // Validate once outside the parallel region; exceptions must not escape it.
  simulate_replication(params, schedule, cfg.seed, 0);

  std::vector<Replication> out(cfg.n_reps);
  const auto n = static_cast<std::int64_t>(cfg.n_reps);
#pragma omp parallel
  {
    Workspace ws;
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
      out[static_cast<std::size_t>(r)] =
          replicate(params, schedule, cfg.seed, static_cast<std::uint64_t>(r), ws);
    }
  }
  return out;
}

McSummary summarize(const MarketParams& params, const Schedule& schedule,
                    const McConfig& cfg, const std::vector<Replication>& reps) {
  if (reps.empty()) throw ValidationError("no replications to summarize");
  const auto n = static_cast<double>(reps.size());

  McSummary s;
  s.horizon = schedule.horizon();
  s.tau = schedule.tau();
  s.m_steps = schedule.steps();
  s.n_reps = reps.size();
  s.seed = cfg.seed;

  // Shifted sums: identical replications give exactly zero spread.
  const double cost_ref = reps.front().cost;
  const double rate_ref = reps.front().cost_rate;
  s.per_asset_mean_costs = Vector::Zero(static_cast<Eigen::Index>(params.n()));
  double cost_d = 0.0, cost_dd = 0.0;
  double rate_d = 0.0, rate_dd = 0.0;
  s.cost_rate.min = rate_ref;
  s.cost_rate.max = rate_ref;
  for (const auto& r : reps) {
    const double dc = r.cost - cost_ref;
    const double dr = r.cost_rate - rate_ref;
    cost_d += dc;
    cost_dd += dc * dc;
    rate_d += dr;
    rate_dd += dr * dr;
    s.per_asset_mean_costs += r.per_asset_costs;
    s.cost_rate.min = std::min(s.cost_rate.min, r.cost_rate);
    s.cost_rate.max = std::max(s.cost_rate.max, r.cost_rate);
  }
  s.mean_cost = cost_ref + cost_d / n;
  s.mean_cost_rate = rate_ref + rate_d / n;
  s.per_asset_mean_costs /= n;
  s.cost_rate.mean = s.mean_cost_rate;
  if (reps.size() > 1) {
    s.std_cost = std::sqrt(std::max(0.0, (cost_dd - cost_d * cost_d / n) / (n - 1.0)));
    s.cost_rate.std =
        std::sqrt(std::max(0.0, (rate_dd - rate_d * rate_d / n) / (n - 1.0)));
  }

  s.expected_cost = expected_cost(params, schedule);
  s.cost_variance = cost_variance(params, schedule);
  return s;
}

McSummary run_experiment(const MarketParams& params, const McConfig& cfg) {
  const Schedule schedule = experiment_schedule(params, cfg);
  return summarize(params, schedule, cfg, run_replications(params, schedule, cfg));
}

McSummary run_experiment_serial(const MarketParams& params, const McConfig& cfg) {
  const Schedule schedule = experiment_schedule(params, cfg);
  return summarize(params, schedule, cfg,
                   run_replications_serial(params, schedule, cfg));
}

}  // namespace liqsched
