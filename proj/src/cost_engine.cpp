#include "liqsched/cost_engine.hpp"

#include <cmath>
#include <string>

#include "liqsched/errors.hpp"

namespace liqsched {

namespace {

void check_inputs(const MarketParams& params, const Schedule& schedule) {
  if (schedule.n() != params.n()) {
    throw DimensionError("schedule has " + std::to_string(schedule.n()) +
                         " assets, market has " + std::to_string(params.n()));
  }
  if (schedule.initial() != params.x0()) {
    throw ValidationError("schedule does not start at the portfolio's x0");
  }
}

void check_noise(const Schedule& schedule, std::span<const Vector> noise) {
  if (noise.size() != static_cast<std::size_t>(schedule.steps())) {
    throw DimensionError("noise has " + std::to_string(noise.size()) +
                         " steps, schedule has " +
                         std::to_string(schedule.steps()));
  }
  for (const auto& xi : noise) {
    if (static_cast<std::size_t>(xi.size()) != schedule.n()) {
      throw DimensionError("noise vector length does not match asset count");
    }
  }
}

}  // namespace

void simulate_path_into(const MarketParams& params, const Schedule& schedule,
                        std::span<const Vector> noise, PathRealization& out) {
  check_inputs(params, schedule);
  check_noise(schedule, noise);

  const auto n = static_cast<Eigen::Index>(params.n());
  const auto m = static_cast<std::size_t>(schedule.steps());
  const double tau = schedule.tau();
  const double sqrt_tau = std::sqrt(tau);
  const auto& x = schedule.positions();

  out.noise.assign(noise.begin(), noise.end());
  out.exec_prices.resize(m);
  out.per_asset_costs = params.x0().cwiseProduct(params.s0());

  Vector fundamental = params.s0();
  Vector sold = Vector::Zero(n);
  Vector delta(n);
  Vector shock(n);
  for (std::size_t k = 1; k <= m; ++k) {
    delta = x[k - 1] - x[k];
    shock.noalias() = params.sigma() * noise[k - 1];
    fundamental += sqrt_tau * shock;
    sold += delta;
    Vector& exec = out.exec_prices[k - 1];
    exec = fundamental;
    exec.noalias() -= params.gamma() * sold;
    exec -= params.eta().cwiseProduct(delta) / tau;
    out.per_asset_costs -= delta.cwiseProduct(exec);
  }
  out.realized_cost = out.per_asset_costs.sum();
}

PathRealization simulate_path(const MarketParams& params,
                              const Schedule& schedule,
                              std::span<const Vector> noise) {
  PathRealization out;
  simulate_path_into(params, schedule, noise, out);
  return out;
}

double realized_cost_closed(const MarketParams& params, const Schedule& schedule,
                            std::span<const Vector> noise) {
  check_inputs(params, schedule);
  check_noise(schedule, noise);

  const Matrix gs = symmetric_part(params.gamma());
  const double tau = schedule.tau();
  const auto& x = schedule.positions();

  double noise_term = 0.0;
  double impact_term = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    noise_term += x[k - 1].dot(params.sigma() * noise[k - 1]);
    const Vector delta = x[k - 1] - x[k];
    impact_term += 0.5 * delta.dot(gs * delta) + params.eta_form(delta) / tau;
  }
  return -std::sqrt(tau) * noise_term + 0.5 * params.x0().dot(gs * params.x0()) +
         impact_term;
}

double expected_cost(const MarketParams& params, const Schedule& schedule) {
  check_inputs(params, schedule);
  const Matrix gs = symmetric_part(params.gamma());
  const double tau = schedule.tau();
  const auto& x = schedule.positions();
  double total = 0.5 * params.x0().dot(gs * params.x0());
  for (std::size_t k = 1; k < x.size(); ++k) {
    const Vector delta = x[k - 1] - x[k];
    total += 0.5 * delta.dot(gs * delta) + params.eta_form(delta) / tau;
  }
  return total;
}

double cost_variance(const MarketParams& params, const Schedule& schedule) {
  check_inputs(params, schedule);
  const auto& x = schedule.positions();
  double total = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) total += params.risk_form(x[k - 1]);
  return schedule.tau() * total;
}

CostMoments var_p(const MarketParams& params, const Schedule& schedule,
                  const RiskLevel& risk) {
  CostMoments out;
  out.mean = expected_cost(params, schedule);
  out.variance = cost_variance(params, schedule);
  out.var_p = out.mean + risk.z() * std::sqrt(out.variance);
  return out;
}

double var_p_linear(const MarketParams& params, double steps, double tau,
                    const RiskLevel& risk) {
  if (!(steps >= 1.0)) {
    throw InvalidStepCount("step count must be >= 1, got " +
                           std::to_string(steps));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidTau("step length must be positive, got " + std::to_string(tau));
  }
  const Vector& x0 = params.x0();
  const double g = params.gamma_form(x0);
  const double e = params.eta_form(x0);
  const double q = params.risk_form(x0);
  const double m = steps;
  const double spread = tau * q * (m / 3.0) * (1.0 + 1.0 / m) * (1.0 + 0.5 / m);
  return 0.5 * g + g / (2.0 * m) + e / (tau * m) + risk.z() * std::sqrt(spread);
}

}  // namespace liqsched
