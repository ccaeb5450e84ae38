#include "qch/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "qch/curve.hpp"
#include "qch/errors.hpp"

namespace qch {

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  // One rule per nesting level: integrands may themselves integrate.
  static thread_local std::vector<std::unique_ptr<boost::math::quadrature::tanh_sinh<double>>> rules;
  static thread_local std::size_t level = 0;
  if (rules.size() <= level) rules.push_back(std::make_unique<boost::math::quadrature::tanh_sinh<double>>(15));
  auto& rule = *rules[level];
  struct Nest {
    std::size_t& l;
    explicit Nest(std::size_t& x) : l(x) { ++l; }
    ~Nest() { --l; }
  } nest(level);
  double err = 0.0;
  double l1 = 0.0;
  const double v = rule.integrate(f, a, b, 1e-12, &err, &l1);
  if (!std::isfinite(v) || err > std::max(tol, tol * l1))
    throw NonConvergence("tanh-sinh quadrature: error estimate " + std::to_string(err));
  return v;
}

double integrate_gauss30(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

void gauss30_rule(double a, double b, std::vector<double>& x, std::vector<double>& w) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  const auto& xs = rule::abscissa();
  const auto& ws = rule::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  x.clear();
  w.clear();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x.push_back(c - h * xs[i]);
    w.push_back(h * ws[i]);
    if (xs[i] != 0.0) {
      x.push_back(c + h * xs[i]);
      w.push_back(h * ws[i]);
    }
  }
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double periodic_trapezoid(const std::function<double(double)>& f, int M, double t0) {
  if (M < 1) throw DomainError("periodic_trapezoid: M must be positive");
  std::vector<double> v(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) v[static_cast<std::size_t>(j)] = f(t0 + kTwoPi * j / M);
  return pairwise_sum(v.data(), v.size()) * (kTwoPi / M);
}

}  // namespace qch
