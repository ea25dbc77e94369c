#include "liqsched/market_model.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "liqsched/errors.hpp"

namespace liqsched {

namespace {

void require_finite(const Eigen::Ref<const Matrix>& m, const char* what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + " has non-finite entries");
  }
}

void require_two_assets(const MarketParams& params) {
  if (params.n() != 2) {
    throw DimensionError("two-asset correlation requires n == 2, got n = " +
                         std::to_string(params.n()));
  }
}

}  // namespace

MarketParams::MarketParams(Vector s0, Vector x0, Matrix sigma, Matrix gamma,
                           Vector eta)
    : s0_(std::move(s0)),
      x0_(std::move(x0)),
      sigma_(std::move(sigma)),
      gamma_(std::move(gamma)),
      eta_(std::move(eta)) {
  const auto n = s0_.size();
  if (n < 1) throw DimensionError("market needs at least one asset");
  auto check_vec = [n](const Vector& v, const char* name) {
    if (v.size() != n) {
      throw DimensionError(std::string(name) + " has length " +
                           std::to_string(v.size()) + ", expected " +
                           std::to_string(n));
    }
  };
  auto check_mat = [n](const Matrix& m, const char* name) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError(std::string(name) + " is " +
                           std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " +
                           std::to_string(n) + "x" + std::to_string(n));
    }
  };
  check_vec(x0_, "x0");
  check_vec(eta_, "eta");
  check_mat(sigma_, "sigma");
  check_mat(gamma_, "gamma");
  require_finite(s0_, "s0");
  require_finite(x0_, "x0");
  require_finite(sigma_, "sigma");
  require_finite(gamma_, "gamma");
  require_finite(eta_, "eta");
  if ((eta_.array() < 0.0).any()) {
    throw ValidationError("eta entries must be non-negative");
  }
}

double MarketParams::eta_form(const Vector& v) const {
  return (v.array().square() * eta_.array()).sum();
}

double MarketParams::gamma_form(const Vector& v) const {
  return v.dot(gamma_ * v);
}

double MarketParams::risk_form(const Vector& v) const {
  return (sigma_.transpose() * v).squaredNorm();
}

RiskLevel RiskLevel::from_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("confidence level must lie in (0, 1), got " +
                          std::to_string(p));
  }
  const boost::math::normal_distribution<double> std_normal;
  return RiskLevel(p, boost::math::quantile(std_normal, p));
}

RiskLevel RiskLevel::from_quantile(double z) {
  if (!std::isfinite(z)) throw ValidationError("quantile must be finite");
  const boost::math::normal_distribution<double> std_normal;
  return RiskLevel(boost::math::cdf(std_normal, z), z);
}

Matrix covariance(const Matrix& sigma) {
  const auto n = sigma.rows();
  Matrix cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < sigma.cols(); ++k) {
        s += sigma(i, k) * sigma(j, k);
      }
      cov(i, j) = s;
      cov(j, i) = s;
    }
  }
  return cov;
}

Matrix cholesky(const Matrix& cov) {
  if (cov.rows() != cov.cols()) {
    throw DimensionError("cholesky needs a square matrix");
  }
  const auto n = cov.rows();
  const double tol = 1e-12 * (n > 0 ? cov.diagonal().maxCoeff() : 0.0);
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = cov(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > tol)) {
      throw NotPositiveDefinite("covariance is not positive definite (pivot " +
                                std::to_string(j + 1) + " = " +
                                std::to_string(pivot) + ")");
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = cov(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / d;
    }
  }
  return l;
}

Matrix symmetric_part(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

double asset_volatility(const MarketParams& params, std::size_t i) {
  if (i >= params.n()) {
    throw IndexOutOfRange("asset index " + std::to_string(i) +
                          " out of range for n = " +
                          std::to_string(params.n()));
  }
  return params.sigma().row(static_cast<Eigen::Index>(i)).norm();
}

double correlation_paper(const MarketParams& params) {
  require_two_assets(params);
  const Matrix& s = params.sigma();
  const double denom = asset_volatility(params, 0) * asset_volatility(params, 1);
  if (denom == 0.0) throw DegenerateVolatility("an asset has zero volatility");
  return (s(0, 0) * s(1, 1) + s(0, 1) * s(1, 0)) / denom;
}

double correlation_standard(const MarketParams& params) {
  require_two_assets(params);
  const Matrix& s = params.sigma();
  const double denom = asset_volatility(params, 0) * asset_volatility(params, 1);
  if (denom == 0.0) throw DegenerateVolatility("an asset has zero volatility");
  return (s(0, 0) * s(1, 0) + s(0, 1) * s(1, 1)) / denom;
}

}  // namespace liqsched
