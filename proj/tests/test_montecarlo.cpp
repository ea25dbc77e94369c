#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "liqsched/cost_engine.hpp"
#include "liqsched/errors.hpp"
#include "liqsched/montecarlo.hpp"
#include "liqsched/optimizer.hpp"
#include "liqsched/rng.hpp"
#include "test_support.hpp"

using namespace liqsched;
using liqsched::testing::base_case;
using liqsched::testing::rel_err;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bit_equal(const McSummary& a, const McSummary& b) {
  if (a.per_asset_mean_costs.size() != b.per_asset_mean_costs.size()) return false;
  for (Eigen::Index i = 0; i < a.per_asset_mean_costs.size(); ++i) {
    if (!bit_equal(a.per_asset_mean_costs(i), b.per_asset_mean_costs(i))) return false;
  }
  return bit_equal(a.mean_cost, b.mean_cost) && bit_equal(a.std_cost, b.std_cost) &&
         bit_equal(a.mean_cost_rate, b.mean_cost_rate) &&
         bit_equal(a.cost_rate.min, b.cost_rate.min) &&
         bit_equal(a.cost_rate.max, b.cost_rate.max) &&
         bit_equal(a.cost_rate.std, b.cost_rate.std) && bit_equal(a.horizon, b.horizon);
}

}  // namespace

TEST_CASE("splitmix64 and mt19937_64 reference outputs") {
  // First output of the SplitMix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  // The 10000th output of a default-constructed mt19937_64 is fixed by the
  // C++ standard; NormalStream relies on this engine.
  std::mt19937_64 engine;
  engine.discard(9999);
  CHECK(engine() == 9981545732273789042ULL);
  CHECK(replication_seed(42, 0) != replication_seed(42, 1));
  CHECK(replication_seed(42, 1) != replication_seed(43, 0));
}

TEST_CASE("normal stream moments") {
  NormalStream s(replication_seed(1, 2));
  const int n = 200000;
  double sum = 0, sum2 = 0, sum4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next();
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
  }
  CHECK(std::abs(sum / n) < 5.0 / std::sqrt(n));
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sum4 / n == doctest::Approx(3.0).epsilon(0.05));

  NormalStream a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(bit_equal(a.next(), b.next()));
}

TEST_CASE("cost rate") {
  const auto p = base_case();
  CHECK(cost_rate(Vector::Zero(2), p) == 0.0);
  Vector one_percent = p.x0().cwiseProduct(p.s0()) * 0.01;
  CHECK(cost_rate(one_percent, p) == doctest::Approx(0.01).epsilon(1e-15));
  const MarketParams flat(Vector::Zero(2), p.x0(), p.sigma(), p.gamma(), p.eta());
  CHECK_THROWS_AS(cost_rate(Vector::Zero(2), flat), ZeroNotional);
  CHECK_THROWS_AS(cost_rate(Vector::Zero(3), p), DimensionError);
}

TEST_CASE("no volatility: every replication is identical") {
  const auto base = base_case();
  const MarketParams calm(base.s0(), base.x0(), Matrix::Zero(2, 2), base.gamma(), base.eta());
  McConfig cfg;
  cfg.n_reps = 50;
  cfg.seed = 3;
  cfg.horizon = 3.0;
  const auto s = run_experiment(calm, cfg);
  CHECK(s.std_cost == 0.0);
  CHECK(s.cost_rate.min == s.cost_rate.max);
  CHECK(rel_err(s.mean_cost, s.expected_cost) <= 1e-9);

  // Deterministic cost rate over the 1.3e9 notional.
  CHECK(calm.notional() == 1.3e9);
  const auto sched = linear_schedule(calm.x0(), 100, 3.0 / 100);
  CHECK(rel_err(s.mean_cost_rate, expected_cost(calm, sched) / 1.3e9) <= 1e-9);
}

TEST_CASE("experiment uses the closed-form horizon by default") {
  const auto p = base_case();
  McConfig cfg;
  cfg.n_reps = 10;
  const auto s = run_experiment(p, cfg);
  CHECK(s.horizon == doctest::Approx(optimal_time_closed(p, cfg.risk).t_star).epsilon(1e-15));
  CHECK(s.m_steps == 100);
  CHECK(s.tau == doctest::Approx(s.horizon / 100));

  const MarketParams no_temp(p.s0(), p.x0(), p.sigma(), p.gamma(), Vector::Zero(2));
  CHECK_THROWS_AS(run_experiment(no_temp, cfg), DegenerateMarket);
  cfg.n_reps = 0;
  CHECK_THROWS_AS(run_experiment(p, cfg), ValidationError);
}

TEST_CASE("base case moments agree with the analytic mean and variance") {
  const auto p = base_case();
  McConfig cfg;
  cfg.n_reps = 1000;
  cfg.seed = 20240601;
  const auto schedule = experiment_schedule(p, cfg);
  const auto reps = run_replications(p, schedule, cfg);
  const auto s = summarize(p, schedule, cfg, reps);

  CHECK(s.expected_cost == doctest::Approx(2408935.183613673).epsilon(1e-10));
  CHECK(s.cost_variance == doctest::Approx(2925309707805.823).epsilon(1e-10));
  CHECK(std::abs(s.mean_cost - s.expected_cost) <= 4.0 * std::sqrt(s.cost_variance / 1000));
  const double ratio = s.std_cost * s.std_cost / s.cost_variance;
  CHECK(ratio >= 0.8);
  CHECK(ratio <= 1.25);

  CHECK(rel_err(s.per_asset_mean_costs.sum(), s.mean_cost) <= 1e-9);
  CHECK(rel_err(s.mean_cost_rate, s.mean_cost / p.notional()) <= 1e-12);
  CHECK(s.cost_rate.min <= s.mean_cost_rate);
  CHECK(s.cost_rate.max >= s.mean_cost_rate);
  CHECK(rel_err(s.cost_rate.std, s.std_cost / p.notional()) <= 1e-9);
  for (const auto& r : reps) {
    CHECK(rel_err(r.per_asset_costs.sum(), r.cost) <= 1e-15);
  }
}

TEST_CASE("OpenMP kernel is bit-identical to the serial reference") {
  const auto p = base_case();
  McConfig cfg;
  cfg.n_reps = 257;
  cfg.seed = 99;
  cfg.m_steps = 37;
  CHECK(bit_equal(run_experiment(p, cfg), run_experiment_serial(p, cfg)));
  CHECK(bit_equal(run_experiment(p, cfg), run_experiment(p, cfg)));

  const auto schedule = experiment_schedule(p, cfg);
  const auto par = run_replications(p, schedule, cfg);
  const auto ser = run_replications_serial(p, schedule, cfg);
  REQUIRE(par.size() == ser.size());
  for (std::size_t r = 0; r < par.size(); ++r) {
    CHECK(bit_equal(par[r].cost, ser[r].cost));
    CHECK(bit_equal(par[r].cost, simulate_replication(p, schedule, 99, r).cost));
  }

  McConfig other = cfg;
  other.seed = 100;
  CHECK_FALSE(bit_equal(run_experiment(p, other).mean_cost, run_experiment(p, cfg).mean_cost));
}

TEST_CASE("replication streams do not depend on replication count") {
  const auto p = base_case();
  McConfig small;
  small.n_reps = 10;
  small.seed = 5;
  McConfig big = small;
  big.n_reps = 100;
  const auto schedule = experiment_schedule(p, small);
  const auto a = run_replications(p, schedule, small);
  const auto b = run_replications(p, schedule, big);
  for (std::size_t r = 0; r < a.size(); ++r) CHECK(bit_equal(a[r].cost, b[r].cost));
}
