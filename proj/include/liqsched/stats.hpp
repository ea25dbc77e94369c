#pragma once

#include <span>
#include <vector>

namespace liqsched {

/// 1-based ranks; tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks).
/// Returns NaN when either input is constant or lengths differ.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace liqsched
