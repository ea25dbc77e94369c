#include "liqsched/schedule.hpp"

#include <cmath>
#include <string>

#include "liqsched/errors.hpp"

namespace liqsched {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidTau("step length must be positive and finite, got " +
                     std::to_string(tau));
  }
}

}  // namespace

Schedule::Schedule(std::vector<Vector> positions, double tau)
    : positions_(std::move(positions)), tau_(tau) {
  if (positions_.size() < 2) {
    throw InvalidStepCount("a schedule needs at least one step");
  }
  check_tau(tau_);
  const auto n = positions_.front().size();
  if (n < 1) throw DimensionError("schedule positions must be non-empty");
  for (const auto& x : positions_) {
    if (x.size() != n) {
      throw DimensionError("schedule positions have inconsistent lengths");
    }
    if (!x.allFinite()) throw ValidationError("schedule has non-finite positions");
  }
  if ((positions_.back().array() != 0.0).any()) {
    throw ValidationError("schedule must end with a zero position");
  }
}

Schedule linear_schedule(const Vector& x0, int steps, double tau) {
  if (steps < 1) {
    throw InvalidStepCount("step count must be >= 1, got " +
                           std::to_string(steps));
  }
  check_tau(tau);
  std::vector<Vector> positions;
  positions.reserve(static_cast<std::size_t>(steps) + 1);
  const double m = steps;
  for (int k = 0; k <= steps; ++k) {
    positions.push_back(x0 * (static_cast<double>(steps - k) / m));
  }
  return Schedule(std::move(positions), tau);
}

std::vector<Vector> deltas(const Schedule& schedule) {
  const auto& x = schedule.positions();
  std::vector<Vector> out;
  out.reserve(x.size() - 1);
  for (std::size_t k = 1; k < x.size(); ++k) out.push_back(x[k - 1] - x[k]);
  return out;
}

std::vector<Vector> speeds(const Schedule& schedule) {
  auto out = deltas(schedule);
  for (auto& d : out) d /= schedule.tau();
  return out;
}

}  // namespace liqsched
