#include "qch/kernels.hpp"

#include <cmath>
#include <numbers>

#include "qch/errors.hpp"

namespace qch {

namespace {

// The Gram radicand is only consulted as a consistency check; the value
// itself comes from the minors, which keep full relative accuracy when the
// chord is nearly parallel to the tangent.
double gram_root(const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const double xx = X.squaredNorm();
  const double yy = Y.squaredNorm();
  const double xy = X.dot(Y);
  const double r = xx * yy - xy * xy;
  if (!(r >= -1e-14 * std::max(1.0, xx * yy)))
    throw NumericalConsistencyError("kernel radicand " + std::to_string(r) + " is negative");
  return wedge_norm(X, Y);
}

}  // namespace

double kernel_K(const JordanCurve& h, double s, double t) {
  if (s == t) return 0.0;
  const CurvePoint ps = h.evaluate(s);
  return gram_root(h.evaluate(t).position - ps.position, ps.first);
}

double circle_chord(double s, double t) { return 2.0 * std::abs(std::sin(0.5 * (s - t))); }

KernelEvaluation kernel_bound_dini(const JordanCurve& h, const ModulusOfContinuity& omega, double s,
                                   double t) {
  KernelEvaluation e{s, t, kernel_K(h, s, t), 0.0, 0.0};
  const double E = circle_chord(s, t);
  if (E == 0.0) return e;
  const double X = (h.evaluate(s).position - h.evaluate(t).position).norm();
  e.bound = X / E * omega.integral(std::numbers::pi * E);
  return e;
}

double holder_kernel_coefficient(const JordanCurve& h, double mu) {
  return derivative_holder_sup(h, mu).value / (1.0 + mu);
}

KernelEvaluation kernel_bound_holder(const JordanCurve& h, double mu, double c_h, double s, double t) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("kernel_bound_holder: mu must lie in (0, 1]");
  if (!(c_h >= 0.0)) throw DomainError("kernel_bound_holder: c_h must be nonnegative");
  KernelEvaluation e{s, t, kernel_K(h, s, t), 0.0, c_h};
  const double X = (h.evaluate(s).position - h.evaluate(t).position).norm();
  e.bound = c_h * X * std::pow(circle_chord(s, t), mu);
  return e;
}

KernelEvaluation kernel_bound_holder(const JordanCurve& h, double mu, double s, double t) {
  return kernel_bound_holder(h, mu, holder_kernel_coefficient(h, mu), s, t);
}

KernelEvaluation kernel_holder_majorant(const JordanCurve& h, double mu, double c_h, double s, double t) {
  KernelEvaluation e = kernel_bound_holder(h, mu, c_h, s, t);
  e.bound *= std::pow(std::numbers::pi, 1.0 + mu);
  return e;
}

double kernel_composition_check(const JordanCurve& h, const AngleMap& f, double s, double t) {
  const double fs = f(s);
  const double dfs = f.derivative(s);
  const CurvePoint ps = h.evaluate(fs);
  const double composed = s == t ? 0.0 : gram_root(h.evaluate(f(t)).position - ps.position, ps.first * dfs);
  return std::abs(composed - std::abs(dfs) * kernel_K(h, fs, f(t)));
}

namespace {

/// K_h(f(tau), f(t)) / (4 pi sin^2((t - tau)/2)) for t != tau.
struct JacobianIntegrand {
  const BoundaryMap& F;
  double tau;
  double ftau;
  CurvePoint p;

  JacobianIntegrand(const BoundaryMap& map, double at) : F(map), tau(at), ftau(map.f(at)), p(map.h.evaluate(ftau)) {}

  double operator()(double t) const {
    const double sn = std::sin(0.5 * (t - tau));
    const double ft = F.f(t);
    if (ft == ftau) return 0.0;
    return gram_root(F.h.evaluate(ft).position - p.position, p.first) / (4.0 * std::numbers::pi * sn * sn);
  }
  double diagonal() const {
    const double d = F.f.derivative(tau);
    return wedge_norm(p.first, p.second) * d * d / (2.0 * std::numbers::pi);
  }
};

double trapezoid_bound(const JacobianIntegrand& g, const QuadratureSpec& q, double tol) {
  auto level = [&](int M) {
    std::vector<double> v(static_cast<std::size_t>(M));
    v[0] = g.diagonal();
    for (int j = 1; j < M; ++j) v[static_cast<std::size_t>(j)] = g(g.tau + kTwoPi * j / M);
    double s = 0.0;
    for (double x : v) s += x;
    return s * kTwoPi / M;
  };
  double prev = level(64);
  for (int M = 128; M <= std::max(q.max_M, q.M); M *= 2) {
    const double cur = level(M);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)) && M >= std::min(q.M, 256)) return cur;
    prev = cur;
  }
  throw RefinementRequired("boundary_jacobian_bound: trapezoid levels did not settle");
}

double majorant_bound(const JacobianIntegrand& g, const QuadratureSpec& q, const JacobianBoundOptions& o) {
  const BoundaryMap& F = g.F;
  double c_h = o.c_h;
  if (c_h < 0.0) c_h = holder_kernel_coefficient(F.h, o.mu);
  double hmax = F.h.max_speed();
  double fmax = 0.0;
  for (int j = 0; j < 4096; ++j) fmax = std::max(fmax, F.f.derivative(kTwoPi * j / 4096));
  const int M = q.M;
  const double eps = kTwoPi / M;
  // On |x| <= pi: sin^2(x/2) >= (x/pi)^2, chord <= f'_max |x|, |X| <= |h'|_max f'_max |x|.
  const double C = c_h * hmax * std::pow(fmax, 1.0 + o.mu) * std::numbers::pi / 4.0;
  const double inner = 2.0 * C * std::pow(eps, o.mu) / o.mu;
  double outer = 0.0;
  for (int j = 1; j < M; ++j) {
    const double w = (j == 1 || j == M - 1) ? 0.5 : 1.0;
    outer += w * g(g.tau + kTwoPi * j / M);
  }
  return inner + outer * eps;
}

}  // namespace

double boundary_jacobian_bound(const BoundaryMap& F, double tau, const QuadratureSpec& q,
                               const JacobianBoundOptions& options) {
  q.validate();
  const double d = std::abs(F.f.derivative(tau));
  if (F.f.collapsed() || d == 0.0) return 0.0;
  const JacobianIntegrand g(F, tau);
  const double integral = options.method == JacobianBoundOptions::Method::Trapezoid
                              ? trapezoid_bound(g, q, options.tol)
                              : majorant_bound(g, q, options);
  return d * integral;
}

}  // namespace qch
