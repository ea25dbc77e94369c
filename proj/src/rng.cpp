#include "liqsched/rng.hpp"

#include <cmath>
#include <numbers>

namespace liqsched {

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  constexpr double kScale = 0x1.0p-53;
  // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;
  const double u2 = static_cast<double>(engine_() >> 11) * kScale;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void NormalStream::fill(std::vector<Vector>& noise, std::size_t steps,
                        std::size_t n) {
  noise.resize(steps);
  for (auto& xi : noise) {
    xi.resize(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = next();
  }
}

}  // namespace liqsched
