#pragma once

#include <vector>

#include "liqsched/market_model.hpp"

namespace liqsched {

/// Discrete liquidation trajectory x_0, x_1, ..., x_M sampled every `tau`.
///
/// Any position list is accepted as long as it has at least two entries of
/// equal length and ends at exactly zero; the cost engine is valid for
/// arbitrary trajectories, the optimizer only uses linear ones.
class Schedule {
 public:
  Schedule(std::vector<Vector> positions, double tau);

  int steps() const { return static_cast<int>(positions_.size()) - 1; }
  double tau() const { return tau_; }
  double horizon() const { return tau_ * steps(); }
  std::size_t n() const { return static_cast<std::size_t>(positions_.front().size()); }

  const std::vector<Vector>& positions() const { return positions_; }
  const Vector& initial() const { return positions_.front(); }

 private:
  std::vector<Vector> positions_;
  double tau_;
};

/// Equal-interval, equal-quantity selling: x_k = x0 (M - k) / M.
Schedule linear_schedule(const Vector& x0, int steps, double tau);

/// delta_k = x_{k-1} - x_k for k = 1..M (element k-1 of the result).
std::vector<Vector> deltas(const Schedule& schedule);

/// v_k = delta_k / tau
std::vector<Vector> speeds(const Schedule& schedule);

}  // namespace liqsched
