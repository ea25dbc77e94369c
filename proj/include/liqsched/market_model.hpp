#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace liqsched {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Static description of an N-asset market under linear price impact.
///
/// Holds initial prices and positions, the volatility component matrix
/// (row i loads asset i on the N Brownian drivers), the permanent impact
/// matrix and the diagonal of the temporary impact matrix. All entries are in
/// raw model units. The permanent impact matrix may be asymmetric; only its
/// symmetric part enters any quadratic form.
///
/// Instances are validated on construction and immutable afterwards.
class MarketParams {
 public:
  MarketParams(Vector s0, Vector x0, Matrix sigma, Matrix gamma, Vector eta);

  std::size_t n() const { return static_cast<std::size_t>(s0_.size()); }

  const Vector& s0() const { return s0_; }
  const Vector& x0() const { return x0_; }
  const Matrix& sigma() const { return sigma_; }
  const Matrix& gamma() const { return gamma_; }
  const Vector& eta() const { return eta_; }

  /// x0' S0, the mark-to-market value of the starting portfolio.
  double notional() const { return x0_.dot(s0_); }

  /// v' diag(eta) v
  double eta_form(const Vector& v) const;
  /// v' gamma v (equals v' sym(gamma) v)
  double gamma_form(const Vector& v) const;
  /// v' sigma sigma' v
  double risk_form(const Vector& v) const;

 private:
  Vector s0_;
  Vector x0_;
  Matrix sigma_;
  Matrix gamma_;
  Vector eta_;
};

/// Confidence level p together with its standard-normal quantile z_p.
class RiskLevel {
 public:
  /// p in (0,1); z_p = Phi^-1(p).
  static RiskLevel from_probability(double p);
  /// Builds the level from a quantile directly; p = Phi(z).
  static RiskLevel from_quantile(double z);

  double p() const { return p_; }
  double z() const { return z_; }

 private:
  RiskLevel(double p, double z) : p_(p), z_(z) {}
  double p_;
  double z_;
};

inline constexpr double kDefaultConfidence = 0.99;

Matrix covariance(const Matrix& sigma);
inline Matrix covariance(const MarketParams& params) {
  return covariance(params.sigma());
}

/// Lower-triangular L with L L' = cov. Throws NotPositiveDefinite when a pivot
/// falls to or below 1e-12 times the largest diagonal entry.
Matrix cholesky(const Matrix& cov);

/// (gamma + gamma') / 2
Matrix symmetric_part(const Matrix& m);

/// Euclidean norm of row i of sigma (zero-based i).
double asset_volatility(const MarketParams& params, std::size_t i);

/// Two-asset correlation coefficient used by the figure presets:
/// (s11 s22 + s12 s21) / (sigma1 sigma2). This is not the covariance-based
/// correlation (a diagonal sigma gives 1, not 0); see correlation_standard.
double correlation_paper(const MarketParams& params);

/// Two-asset covariance-based correlation Sigma12 / sqrt(Sigma11 Sigma22).
double correlation_standard(const MarketParams& params);

}  // namespace liqsched
