#include "qch/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "qch/errors.hpp"

namespace qch {

TrigSeries::TrigSeries(Eigen::MatrixXd cos_coeffs, Eigen::MatrixXd sin_coeffs, double t0)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)), t0_(t0) {
  if (cos_.rows() != sin_.rows() || cos_.cols() != sin_.cols() || cos_.cols() < 1)
    throw DomainError("TrigSeries: coefficient matrices must have equal, nonempty shape");
}

TrigSeries TrigSeries::interpolate(const Eigen::MatrixXd& samples, double t0) {
  const auto n = samples.rows();
  const auto m = samples.cols();
  if (m < 2) throw DomainError("TrigSeries::interpolate: need at least two samples");
  const auto kmax = m / 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, kmax + 1);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, kmax + 1);
  Eigen::FFT<double> fft;
  std::vector<double> row(static_cast<std::size_t>(m));
  std::vector<std::complex<double>> spec;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = samples(i, j);
    fft.fwd(spec, row);
    a(i, 0) = spec[0].real() * inv_m;
    for (Eigen::Index k = 1; k <= kmax; ++k) {
      const auto& c = spec[static_cast<std::size_t>(k)];
      if (m % 2 == 0 && k == kmax) {
        a(i, k) = c.real() * inv_m;  // Nyquist mode is a pure cosine
      } else {
        a(i, k) = 2.0 * c.real() * inv_m;
        b(i, k) = -2.0 * c.imag() * inv_m;
      }
    }
  }
  return TrigSeries(std::move(a), std::move(b), t0);
}

Eigen::Matrix<double, Eigen::Dynamic, 3> TrigSeries::evaluate(double t, int order) const {
  const auto n = cos_.rows();
  const auto kmax = cos_.cols() - 1;
  Eigen::Matrix<double, Eigen::Dynamic, 3> out = Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(n, 3);
  out.col(0) = cos_.col(0);
  const double x = t - t0_;
  const std::complex<double> step(std::cos(x), std::sin(x));
  std::complex<double> rot = step;
  for (Eigen::Index k = 1; k <= kmax; ++k) {
    if (k % 64 == 0) rot = {std::cos(static_cast<double>(k) * x), std::sin(static_cast<double>(k) * x)};
    const double c = rot.real();
    const double s = rot.imag();
    const double kk = static_cast<double>(k);
    out.col(0).noalias() += c * cos_.col(k) + s * sin_.col(k);
    if (order >= 1) out.col(1).noalias() += kk * (c * sin_.col(k) - s * cos_.col(k));
    if (order >= 2) out.col(2).noalias() -= (kk * kk) * (c * cos_.col(k) + s * sin_.col(k));
    rot *= step;
  }
  return out;
}

double TrigSeries::antiderivative(double t) const {
  const double x = t - t0_;
  double s = cos_(0, 0) * x;
  const auto kmax = cos_.cols() - 1;
  const std::complex<double> step(std::cos(x), std::sin(x));
  std::complex<double> rot = step;
  for (Eigen::Index k = 1; k <= kmax; ++k) {
    if (k % 64 == 0) rot = {std::cos(static_cast<double>(k) * x), std::sin(static_cast<double>(k) * x)};
    const double kk = static_cast<double>(k);
    s += (cos_(0, k) * rot.imag() + sin_(0, k) * (1.0 - rot.real())) / kk;
    rot *= step;
  }
  return s;
}

double TrigSeries::tail_ratio() const {
  const auto kmax = cos_.cols() - 1;
  double total = 0.0;
  double tail = 0.0;
  for (Eigen::Index k = 0; k <= kmax; ++k) {
    const double mag = std::hypot(cos_.col(k).norm(), sin_.col(k).norm());
    total = std::max(total, mag);
    if (4 * k >= 3 * kmax && k > 0) tail = std::max(tail, mag);
  }
  return total > 0.0 ? tail / total : 0.0;
}

TrigSeries TrigSeries::scaled(double c) const { return TrigSeries(c * cos_, c * sin_, t0_); }

TrigSeries TrigSeries::truncated(double rel) const {
  Eigen::Index keep = cos_.cols() - 1;
  double top = 0.0;
  for (Eigen::Index k = 0; k < cos_.cols(); ++k)
    top = std::max(top, std::hypot(cos_.col(k).norm(), sin_.col(k).norm()));
  while (keep > 0 && std::hypot(cos_.col(keep).norm(), sin_.col(keep).norm()) <= rel * top) --keep;
  return TrigSeries(cos_.leftCols(keep + 1), sin_.leftCols(keep + 1), t0_);
}

}  // namespace qch
