#include "qch/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "qch/errors.hpp"
#include "qch/parallel.hpp"

namespace qch {

void QuadratureSpec::validate() const {
  if (M < 64 || (M & (M - 1)) != 0) throw DomainError("quadrature: M must be a power of two >= 64");
  if (!(delta > 0.0 && delta <= 0.5)) throw DomainError("quadrature: delta must lie in (0, 0.5]");
  if (max_M < M) throw DomainError("quadrature: max_M below M");
  if (!(tol > 0.0)) throw DomainError("quadrature: tol must be positive");
}

// ---------------------------------------------------------------------------

AngleMap::AngleMap(std::function<double(double)> f, std::function<double(double)> df, std::string name,
                   bool collapsed)
    : f_(std::move(f)), df_(std::move(df)), name_(std::move(name)), collapsed_(collapsed) {}

AngleMap::AngleMap() : AngleMap(identity()) {}

void AngleMap::validate() const {
  const double turn = f_(kTwoPi) - f_(0.0);
  if (std::abs(turn - kTwoPi) > 1e-9)
    throw DomainError("angle map '" + name_ + "' is not a degree-one circle map");
  for (int j = 0; j < 4096; ++j) {
    const double t = kTwoPi * j / 4096;
    if (df_(t) < -1e-12) throw DomainError("angle map '" + name_ + "' is not nondecreasing");
  }
}

AngleMap AngleMap::identity(double shift) {
  return AngleMap([shift](double t) { return t + shift; }, [](double) { return 1.0; }, "identity", false);
}

AngleMap AngleMap::fourier(std::vector<double> a, std::vector<double> b, double shift) {
  if (a.size() != b.size()) throw DomainError("fourier angle map: coefficient lists differ in length");
  auto f = [a, b, shift](double t) {
    double v = t + shift;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      v += a[k] * std::cos(kk * t) + b[k] * std::sin(kk * t);
    }
    return v;
  };
  auto df = [a, b](double t) {
    double v = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      v += kk * (b[k] * std::cos(kk * t) - a[k] * std::sin(kk * t));
    }
    return v;
  };
  AngleMap m(f, df, "fourier", false);
  m.validate();
  return m;
}

AngleMap AngleMap::mobius(Complex a, double theta) {
  if (!(std::abs(a) < 1.0)) throw DomainError("mobius angle map: |a| must be < 1");
  const Complex ac = std::conj(a);
  auto f = [ac, theta](double t) { return theta + t - 2.0 * std::arg(1.0 - ac * std::polar(1.0, t)); };
  auto df = [a](double t) { return (1.0 - std::norm(a)) / std::norm(std::polar(1.0, t) - a); };
  return AngleMap(f, df, "mobius", false);
}

AngleMap AngleMap::collapse(double f0) {
  return AngleMap([f0](double) { return f0; }, [](double) { return 0.0; }, "collapse", true);
}

AngleMap AngleMap::from_function(std::function<double(double)> f, std::function<double(double)> df,
                                 std::string name) {
  AngleMap m(std::move(f), std::move(df), std::move(name), false);
  m.validate();
  return m;
}

Eigen::VectorXd BoundaryMap::value(double t) const { return h.evaluate(f(t)).position; }

Eigen::VectorXd BoundaryMap::derivative(double t) const {
  const double d = f.derivative(t);
  if (d == 0.0) return Eigen::VectorXd::Zero(dimension());
  return h.evaluate(f(t)).first * d;
}

// ---------------------------------------------------------------------------

double poisson_kernel(double r, double t) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("poisson_kernel: r must lie in [0, 1)");
  return (1.0 - r * r) / (kTwoPi * (1.0 - 2.0 * r * std::cos(t) + r * r));
}

namespace {

Eigen::MatrixXd sample_map(const BoundaryMap& F, int M) {
  Eigen::MatrixXd s(F.dimension(), M);
  parallel_for_chunks(static_cast<std::size_t>(M), [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j)
      s.col(static_cast<Eigen::Index>(j)) = F.value(kTwoPi * static_cast<double>(j) / M);
  });
  return s;
}

/// Signed frequency of FFT slot k.
int frequency(int k, int M) { return k <= M / 2 ? k : k - M; }

}  // namespace

HarmonicExtension::HarmonicExtension(BoundaryMap F, QuadratureSpec q) : F_(std::move(F)), q_(q) {
  q_.validate();
  auto base = std::make_shared<const Eigen::MatrixXd>(sample_map(F_, q_.M));
  levels_[q_.M] = base;
  const int n = dimension();
  const int M = q_.M;
  coeff_.resize(n, M);
  Eigen::FFT<double> fft;
  std::vector<double> row(static_cast<std::size_t>(M));
  std::vector<Complex> spec;
  double top = 0.0, tail = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < M; ++j) row[static_cast<std::size_t>(j)] = (*base)(i, j);
    fft.fwd(spec, row);
    for (int k = 0; k < M; ++k) coeff_(i, k) = spec[static_cast<std::size_t>(k)] / static_cast<double>(M);
  }
  for (int k = 0; k < M; ++k) {
    const double mag = coeff_.col(k).norm();
    top = std::max(top, mag);
    if (4 * std::abs(frequency(k, M)) >= 3 * (M / 2)) tail = std::max(tail, mag);
  }
  tail_ = top > 0.0 ? tail / top : 0.0;
}

std::shared_ptr<const Eigen::MatrixXd> HarmonicExtension::level(int M) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = levels_.find(M);
  if (it != levels_.end()) return it->second;
  auto s = std::make_shared<const Eigen::MatrixXd>(sample_map(F_, M));
  levels_[M] = s;
  return s;
}

void HarmonicExtension::check_point(Complex z) const {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw DomainError("harmonic extension: point outside the open disk");
  if (r > 1.0 - q_.delta + 1e-15 && !q_.adaptive)
    throw NearBoundaryError("harmonic extension: |z| exceeds the radial cap 1 - delta");
}

void HarmonicExtension::weights(Complex z, int M, Eigen::VectorXd* p, Eigen::VectorXd* gx,
                                Eigen::VectorXd* gy) const {
  if (p) p->resize(M);
  if (gx) gx->resize(M);
  if (gy) gy->resize(M);
  const double inv_m = 1.0 / M;
  for (int j = 0; j < M; ++j) {
    const Complex w = std::polar(1.0, kTwoPi * j / M);
    const Complex inv = 1.0 / (w - z);
    if (p) (*p)(j) = ((w + z) * inv).real() * inv_m;
    if (gx || gy) {
      const Complex g = 2.0 * w * inv * inv * inv_m;
      if (gx) (*gx)(j) = g.real();
      if (gy) (*gy)(j) = -g.imag();
    }
  }
}

Eigen::VectorXd HarmonicExtension::value(Complex z) const {
  check_point(z);
  auto eval = [&](int M) {
    Eigen::VectorXd p;
    weights(z, M, &p, nullptr, nullptr);
    return Eigen::VectorXd(*level(M) * p);
  };
  Eigen::VectorXd u = eval(q_.M);
  if (std::abs(z) <= 1.0 - q_.delta + 1e-15) return u;
  for (int M = 2 * q_.M; M <= q_.max_M; M *= 2) {
    Eigen::VectorXd next = eval(M);
    if ((next - u).norm() <= q_.tol * std::max(1.0, next.norm())) return next;
    u = std::move(next);
  }
  throw NonConvergence("harmonic extension: adaptive refinement reached max_M");
}

GradientFrame HarmonicExtension::gradient(Complex z) const {
  check_point(z);
  auto eval = [&](int M) {
    Eigen::VectorXd gx, gy;
    weights(z, M, nullptr, &gx, &gy);
    const auto s = level(M);
    return GradientFrame{z, *s * gx, *s * gy};
  };
  GradientFrame g = eval(q_.M);
  if (std::abs(z) <= 1.0 - q_.delta + 1e-15) return g;
  for (int M = 2 * q_.M; M <= q_.max_M; M *= 2) {
    GradientFrame next = eval(M);
    const double scale = std::max(1.0, std::hypot(next.ux.norm(), next.uy.norm()));
    if (std::hypot((next.ux - g.ux).norm(), (next.uy - g.uy).norm()) <= q_.tol * scale) return next;
    g = std::move(next);
  }
  throw NonConvergence("harmonic extension: adaptive refinement reached max_M");
}

HarmonicExtension::Ring HarmonicExtension::ring(double r) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("harmonic extension: ring radius must lie in [0, 1)");
  const int n = dimension();
  const int M = q_.M;
  Ring out;
  out.u.resize(n, M);
  out.ux.resize(n, M);
  out.uy.resize(n, M);
  Eigen::FFT<double> fft;
  std::vector<Complex> cu(static_cast<std::size_t>(M)), cr(cu.size()), ct(cu.size());
  std::vector<Complex> u, ur, ut;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < M; ++k) {
      const int f = frequency(k, M);
      const int a = std::abs(f);
      const Complex c = coeff_(i, k) * static_cast<double>(M);
      const double rk = std::pow(r, a);
      const double rk1 = a == 0 ? 0.0 : std::pow(r, a - 1);
      // Nyquist slot: real cosine mode, no angular derivative.
      const bool nyquist = 2 * k == M;
      cu[static_cast<std::size_t>(k)] = c * rk;
      cr[static_cast<std::size_t>(k)] = c * (a * rk1);
      ct[static_cast<std::size_t>(k)] = nyquist ? Complex(0.0) : c * Complex(0.0, f * rk1);  // u_t / r
    }
    fft.inv(u, cu);
    fft.inv(ur, cr);
    fft.inv(ut, ct);
    for (int j = 0; j < M; ++j) {
      const double th = kTwoPi * j / M;
      const double c = std::cos(th), s = std::sin(th);
      const auto jj = static_cast<std::size_t>(j);
      out.u(i, j) = u[jj].real();
      out.ux(i, j) = ur[jj].real() * c - ut[jj].real() * s;
      out.uy(i, j) = ur[jj].real() * s + ut[jj].real() * c;
    }
  }
  return out;
}

GradientFrame HarmonicExtension::boundary_frame(double tau) const {
  if (tail_ > 1e-9)
    throw RefinementRequired("boundary frame: boundary samples are not spectrally resolved");
  const int n = dimension();
  const int M = q_.M;
  Eigen::VectorXd ur = Eigen::VectorXd::Zero(n), ut = Eigen::VectorXd::Zero(n);
  for (int k = 1; k < M; ++k) {
    const int f = frequency(k, M);
    if (2 * k == M) continue;
    const Complex e = std::polar(1.0, f * tau);
    for (int i = 0; i < n; ++i) {
      const Complex c = coeff_(i, k) * e;
      ur(i) += std::abs(f) * c.real();
      ut(i) += (Complex(0.0, f) * c).real();
    }
  }
  const double c = std::cos(tau), s = std::sin(tau);
  return {std::polar(1.0, tau), ur * c - ut * s, ur * s + ut * c};
}

Eigen::VectorXd poisson_extend(const BoundaryMap& F, Complex z, const QuadratureSpec& q) {
  return HarmonicExtension(F, q).value(z);
}

GradientFrame gradient(const BoundaryMap& F, Complex z, const QuadratureSpec& q) {
  return HarmonicExtension(F, q).gradient(z);
}

// ---------------------------------------------------------------------------

double jacobian(const GradientFrame& frame) { return wedge_norm(frame.ux, frame.uy); }

FrameNorms frame_norms(const GradientFrame& frame) {
  const double a = frame.ux.squaredNorm();
  const double c = frame.uy.squaredNorm();
  const double b = frame.ux.dot(frame.uy);
  FrameNorms out;
  out.hs = std::sqrt(0.5 * (a + c));
  out.op = std::sqrt(0.5 * (a + c + std::hypot(a - c, 2.0 * b)));
  out.min = out.op > 0.0 ? jacobian(frame) / out.op : 0.0;
  return out;
}

double dilatation(const GradientFrame& frame) {
  const FrameNorms nm = frame_norms(frame);
  if (!(nm.min > 1e-13 * nm.op)) throw DegenerateFrame("dilatation: frame has rank <= 1 (branch point)");
  return nm.op / nm.min;
}

Eigen::VectorXd angular_derivative(const GradientFrame& frame) {
  const double r = std::abs(frame.z);
  const double t = std::arg(frame.z);
  return r * (frame.uy * std::cos(t) - frame.ux * std::sin(t));
}

AngularReport angular_derivative_check(const HarmonicExtension& u, const std::vector<Complex>& grid,
                                       double K, double tol) {
  if (!(K >= 1.0)) throw DomainError("angular_derivative_check: K must be >= 1");
  std::vector<double> margin(grid.size());
  parallel_for_chunks(grid.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const GradientFrame g = u.gradient(grid[i]);
      const double r = std::abs(grid[i]);
      margin[i] = r * r * K * jacobian(g) - angular_derivative(g).squaredNorm();
    }
  });
  AngularReport rep;
  rep.tol = tol;
  rep.points = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (margin[i] < rep.worst_margin) {
      rep.worst_margin = margin[i];
      rep.worst_z = grid[i];
    }
    if (margin[i] < -tol) ++rep.violations;
  }
  return rep;
}

}  // namespace qch
