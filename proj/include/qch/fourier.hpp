#pragma once

#include <Eigen/Dense>

namespace qch {

/// Real vector-valued trigonometric polynomial on the circle,
///
///   x(t) = a_0 + sum_{k=1}^{K} a_k cos(k (t - t0)) + b_k sin(k (t - t0)),
///
/// stored as two n x (K+1) coefficient matrices (column k is frequency k;
/// column 0 of `sin` is unused).
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(Eigen::MatrixXd cos_coeffs, Eigen::MatrixXd sin_coeffs, double t0 = 0.0);

  /// Trigonometric interpolant of n x m samples taken at t0 + 2*pi*j/m.
  static TrigSeries interpolate(const Eigen::MatrixXd& samples, double t0 = 0.0);

  int dimension() const { return static_cast<int>(cos_.rows()); }
  int max_frequency() const { return static_cast<int>(cos_.cols()) - 1; }
  const Eigen::MatrixXd& cos_coeffs() const { return cos_; }
  const Eigen::MatrixXd& sin_coeffs() const { return sin_; }

  /// Value and the first `order` derivatives (order <= 2) at t. Columns of
  /// the returned n x 3 matrix are x, x', x''; unused columns are zero.
  Eigen::Matrix<double, Eigen::Dynamic, 3> evaluate(double t, int order = 2) const;

  /// Antiderivative of the first coordinate, normalised so S(t0) = 0.
  double antiderivative(double t) const;

  /// Largest coefficient magnitude in the upper quarter of the spectrum,
  /// relative to the largest overall. Small values mean resolved samples.
  double tail_ratio() const;

  TrigSeries scaled(double c) const;

  /// Drops trailing frequencies whose magnitude is below rel * (largest).
  TrigSeries truncated(double rel) const;

 private:
  Eigen::MatrixXd cos_;
  Eigen::MatrixXd sin_;
  double t0_ = 0.0;
};

}  // namespace qch
