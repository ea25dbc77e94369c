#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "liqsched/market_model.hpp"

namespace liqsched::testing {

inline MarketParams make_params(std::vector<double> s0, std::vector<double> x0,
                                std::vector<std::vector<double>> sigma,
                                std::vector<std::vector<double>> gamma,
                                std::vector<double> eta) {
  const auto n = static_cast<Eigen::Index>(s0.size());
  auto vec = [](const std::vector<double>& v) {
    return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  auto mat = [n](const std::vector<std::vector<double>>& rows) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
  };
  return MarketParams(vec(s0), vec(x0), mat(sigma), mat(gamma), vec(eta));
}

inline MarketParams scalar_params(double s0, double x0, double sigma,
                                  double gamma, double eta) {
  return make_params({s0}, {x0}, {{sigma}}, {{gamma}}, {eta});
}

/// The two-asset portfolio used throughout the experiments.
inline MarketParams base_case() {
  return make_params({50.0, 100.0}, {1e7, 8e6}, {{0.08, 0.02}, {0.1, 0.03}},
                     {{3e-9, 1e-9}, {2e-9, 5e-9}}, {3e-8, 5e-8});
}

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Random market of size n with positions and impacts on realistic scales.
struct RandomMarket {
  std::mt19937_64 rng;
  explicit RandomMarket(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  MarketParams draw(std::size_t n, bool symmetric_gamma) {
    const auto N = static_cast<Eigen::Index>(n);
    Vector s0(N), x0(N), eta(N);
    Matrix sigma(N, N), gamma(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
      s0(i) = uniform(10.0, 200.0);
      x0(i) = uniform(1e5, 1e7);
      eta(i) = uniform(1e-8, 1e-7);
      for (Eigen::Index j = 0; j < N; ++j) {
        sigma(i, j) = uniform(-0.1, 0.2);
        gamma(i, j) = uniform(1e-10, 5e-9);
      }
      sigma(i, i) += 0.3;
    }
    if (symmetric_gamma) gamma = 0.5 * (gamma + gamma.transpose()).eval();
    return MarketParams(s0, x0, sigma, gamma, eta);
  }

  std::vector<Vector> noise(std::size_t steps, std::size_t n) {
    std::normal_distribution<double> normal;
    std::vector<Vector> out(steps, Vector(static_cast<Eigen::Index>(n)));
    for (auto& v : out) {
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    }
    return out;
  }
};

}  // namespace liqsched::testing
