#include "qch/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qch/errors.hpp"
#include "qch/quadrature.hpp"

namespace qch {

namespace {

constexpr double kPi = std::numbers::pi;

void check_K(double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw DomainError("K must be a finite number >= 1");
}
void check_upsilon(double u) {
  if (!(u > 0.0 && u <= kPi)) throw DomainError("Upsilon must lie in (0, pi]");
}
void check_lambda(double l) {
  if (!(l >= 1.0) || !std::isfinite(l)) throw DomainError("lambda must be a finite number >= 1");
}
void check_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("mu must lie in (0, 1]");
}

}  // namespace

double isoperimetric_coefficient(SurfaceClass cls, double param) {
  switch (cls) {
    case SurfaceClass::Minimal:
      return kPi;
    case SurfaceClass::Harmonic:
      return 1.0;
    case SurfaceClass::QcHarmonic:
      check_K(param);
      return std::max(2.0 * kPi / (1.0 + param * param), 1.0);
    case SurfaceClass::Custom:
      check_upsilon(param);
      return param;
  }
  throw DomainError("unknown surface class");
}

double mori_exponent(double K, double lambda, double upsilon) {
  check_K(K);
  check_lambda(lambda);
  check_upsilon(upsilon);
  const double w = 1.0 + 2.0 * lambda;
  return 8.0 * upsilon / (kPi * K * (w * w));
}

double mori_constant(double K, double lambda, double upsilon, double area, MoriVariant variant) {
  if (!(area > 0.0) || !std::isfinite(area)) throw DomainError("mori_constant: area must be positive");
  const double a = mori_exponent(K, lambda, upsilon);
  const double w = 1.0 + 2.0 * lambda;
  const double p = variant == MoriVariant::Statement ? a : 0.5 * a;
  return 4.0 * w * std::pow(2.0, p) * std::sqrt(2.0 * kPi * K * area / std::log(2.0));
}

void BoundInputs::validate() const {
  check_K(K);
  check_mu(mu);
  check_upsilon(upsilon);
  check_lambda(lambda);
  if (!(c_gamma >= 0.0) || !std::isfinite(c_gamma)) throw DomainError("C_gamma must be finite and >= 0");
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("length must be positive");
  if (area) {
    if (!(*area > 0.0) || !std::isfinite(*area)) throw DomainError("area must be positive");
    if (*area > 0.25 * length * length * (1.0 + 1e-12))
      throw DomainError("area exceeds length^2 / 4, impossible for a spanning surface");
  }
}

BoundResult lipschitz_bound(const BoundInputs& in) {
  in.validate();
  if (in.upsilon < 1.0) throw DomainError("lipschitz_bound requires Upsilon >= 1");
  const double K = in.K, mu = in.mu, c = in.c_gamma;
  const double w = 1.0 + 2.0 * in.lambda;
  BoundResult r;
  r.alpha = mori_exponent(K, in.lambda, in.upsilon);
  const double a = r.alpha;
  r.area = in.area_or_default();
  r.mori = mori_constant(K, in.lambda, in.upsilon, r.area);
  r.exponent = (2.0 - a) / (mu * a);
  const double base1 = K * c * kPi * (2.0 - a) / (2.0 * mu * a);
  const double base2 = in.area ? 4.0 * w * std::sqrt(2.0 * kPi * K * *in.area / std::log(2.0))
                               : 4.0 * w * in.length * std::sqrt(kPi * K / std::log(4.0));
  if (c == 0.0) {
    r.log_L = -std::numeric_limits<double>::infinity();
    r.L = 0.0;
    return r;
  }
  r.log_L = std::log(8.0) + r.exponent * std::log(base1) + (2.0 / a) * std::log(base2);
  r.L = std::exp(r.log_L);
  return r;
}

BoundResult minimal_surface_bound(double lambda, double mu, double c_gamma, double length) {
  check_lambda(lambda);
  check_mu(mu);
  if (!(c_gamma >= 0.0) || !std::isfinite(c_gamma)) throw DomainError("C_gamma must be finite and >= 0");
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("length must be positive");
  const double w = 1.0 + 2.0 * lambda;
  const double x = -0.75 + lambda * (1.0 + lambda);
  BoundResult r;
  r.alpha = 8.0 / (w * w);
  r.exponent = x / mu;
  r.area = length * length / (4.0 * kPi);
  r.mori = mori_constant(1.0, lambda, kPi, r.area);
  if (c_gamma == 0.0) {
    r.log_L = -std::numeric_limits<double>::infinity();
    r.L = 0.0;
    return r;
  }
  const double base1 = c_gamma * x * kPi / (2.0 * mu);
  const double base2 = 4.0 * w * length / std::sqrt(std::log(4.0));
  const double h = 0.5 + lambda;
  r.log_L = std::log(8.0) + (x / mu) * std::log(base1) + (h * h) * std::log(base2);
  r.L = std::exp(r.log_L);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

double ring_jacobian_integral(const HarmonicExtension& u, double r) {
  const auto ring = u.ring(r);
  const auto M = static_cast<std::size_t>(ring.ux.cols());
  std::vector<double> J(M);
  for (std::size_t j = 0; j < M; ++j) {
    GradientFrame g{Complex(), ring.ux.col(static_cast<Eigen::Index>(j)), ring.uy.col(static_cast<Eigen::Index>(j))};
    J[j] = jacobian(g);
  }
  return pairwise_sum(J.data(), M) * kTwoPi / static_cast<double>(M);
}

double radial_integral(const HarmonicExtension& u, double a, double b) {
  std::vector<double> x, w;
  gauss30_rule(a, b, x, w);
  std::vector<double> terms(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) terms[k] = w[k] * x[k] * ring_jacobian_integral(u, x[k]);
  return pairwise_sum(terms.data(), terms.size());
}

int pow2_at_least(double v, int floor) {
  int M = floor;
  while (M < v) M *= 2;
  return M;
}

}  // namespace

double surface_area(const BoundaryMap& F, const QuadratureSpec& q, double* last_change) {
  q.validate();
  constexpr int kLevels = 5;
  std::vector<double> partial;
  const HarmonicExtension inner(F, q);
  double acc = radial_integral(inner, 0.0, 1.0 - q.delta);
  partial.push_back(acc);
  for (int k = 0; k + 1 < kLevels; ++k) {
    const double a = 1.0 - q.delta / std::pow(2.0, k);
    const double b = 1.0 - q.delta / std::pow(2.0, k + 1);
    QuadratureSpec qk = q;
    qk.M = pow2_at_least(40.0 / (1.0 - b), q.M);
    qk.max_M = std::max(qk.max_M, qk.M);
    qk.delta = std::min(0.5, 1.0 - b);
    qk.adaptive = false;
    const HarmonicExtension ext(F, qk);
    acc += radial_integral(ext, a, b);
    partial.push_back(acc);
  }
  // Richardson table in the cap width delta / 2^k.
  std::vector<std::vector<double>> R(kLevels);
  R[0] = partial;
  for (int j = 1; j < kLevels; ++j) {
    const double f = std::pow(2.0, j);
    for (std::size_t k = 0; k + 1 < R[j - 1].size(); ++k)
      R[j].push_back((f * R[j - 1][k + 1] - R[j - 1][k]) / (f - 1.0));
  }
  const double best = R[kLevels - 1][0];
  const double change = std::abs(best - R[kLevels - 2][1]);
  if (last_change) *last_change = change;
  if (!std::isfinite(best) || change > 1e-6 * std::max(1.0, std::abs(best)))
    throw RefinementRequired("surface_area: Richardson extrapolation did not settle");
  return best;
}

double boundary_length(const BoundaryMap& F, int M) {
  return periodic_trapezoid([&](double t) { return F.derivative(t).norm(); }, M);
}

IsoperimetricReport isoperimetric_check(const BoundaryMap& F, const QuadratureSpec& q, double upsilon) {
  check_upsilon(upsilon);
  IsoperimetricReport rep;
  rep.upsilon = upsilon;
  rep.length = boundary_length(F);
  rep.area = surface_area(F, q, &rep.richardson_change);
  if (!(rep.length > 0.0)) throw DegenerateSurface("isoperimetric_check: boundary has zero length (0/0 ratio)");
  rep.ratio = rep.area / (rep.length * rep.length);
  rep.limit = 1.0 / (4.0 * upsilon);
  rep.margin = rep.limit - rep.ratio;
  return rep;
}

}  // namespace qch
