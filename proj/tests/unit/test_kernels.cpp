#include <random>

#include "doctest.h"
#include "qch/errors.hpp"
#include "qch/kernels.hpp"
#include "qch/scenarios.hpp"
#include "support.hpp"

using namespace qch;
using namespace qch::test;

TEST_CASE("circle kernel closed form") {
  const JordanCurve c = circle();
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0, kTwoPi);
  for (int k = 0; k < 200; ++k) {
    const double s = u(rng), t = u(rng);
    CHECK(std::abs(kernel_K(c, s, t) - (1 - std::cos(t - s))) < 1e-12);
  }
  CHECK(kernel_K(c, 1.0, 1.0) == 0.0);
  CHECK(circle_chord(0.0, M_PI) == doctest::Approx(2.0));
}

TEST_CASE("kernel chain on the ellipse") {
  const JordanCurve e = ellipse();
  std::vector<double> steps;
  for (int k = 1; k <= 200; ++k) steps.push_back(M_PI * k / 200);
  const ModulusOfContinuity w = dini_modulus_table(e, steps);
  const double c_h = holder_kernel_coefficient(e, 1.0);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0, kTwoPi);
  for (int k = 0; k < 300; ++k) {
    const double s = u(rng), t = u(rng);
    const KernelEvaluation d = kernel_bound_dini(e, w, s, t);
    const KernelEvaluation m = kernel_holder_majorant(e, 1.0, c_h, s, t);
    CHECK(d.holds());
    CHECK(d.bound <= m.bound + 1e-9);
  }
}

TEST_CASE("hoelder kernel bound argument checks") {
  const JordanCurve c = circle();
  CHECK_THROWS_AS(kernel_bound_holder(c, 0.0, 1.0, 0.1, 0.2), DomainError);
  CHECK_THROWS_AS(kernel_bound_holder(c, 1.0, -1.0, 0.1, 0.2), DomainError);
  // For the unit circle |h'(x) - h'(y)| <= |x - y|, so c_h = 1/2.
  CHECK(holder_kernel_coefficient(c, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("kernel composition with a reparametrisation") {
  const JordanCurve e = ellipse();
  const AngleMap f = AngleMap::fourier({0.1}, {0.2});
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0, kTwoPi);
  for (int k = 0; k < 50; ++k) CHECK(kernel_composition_check(e, f, u(rng), u(rng)) < 1e-12);
}

TEST_CASE("boundary jacobian: identity is an equality case") {
  const BoundaryMap F{circle(), AngleMap()};
  for (double tau : {0.0, 1.1, 4.0}) CHECK(std::abs(boundary_jacobian_bound(F, tau) - 1.0) < 1e-12);
  JacobianBoundOptions opt;
  opt.method = JacobianBoundOptions::Method::Majorant;
  const double maj = boundary_jacobian_bound(F, 0.3, {}, opt);
  CHECK(maj >= 1.0);
  CHECK(maj < 1.01);
}

TEST_CASE("boundary jacobian: frozen conformal values") {
  // J on the circle equals the bound for conformal maps (tests/oracles/kernel_oracles.py).
  const Scenario sc = make_scenario(ScenarioKind::ConformalPoly, {0.2, 0.3, 2});
  CHECK(rel_err(boundary_jacobian_bound(sc.F, 0.0), 1.69) < 1e-10);
  CHECK(rel_err(boundary_jacobian_bound(sc.F, 1.0), 1.41418138352088381) < 1e-10);
  CHECK(rel_err(boundary_jacobian_bound(sc.F, 2.5), 0.609313830671839782) < 1e-10);
}

TEST_CASE("boundary jacobian: affine bound is 1 - c^2") {
  const Scenario sc = make_scenario(ScenarioKind::Affine, {0.2});
  for (double tau : {0.0, 0.7, 3.3}) CHECK(rel_err(boundary_jacobian_bound(sc.F, tau), 0.96) < 1e-10);
}

TEST_CASE("boundary jacobian: collapsed map gives zero") {
  const BoundaryMap F{circle(), AngleMap::collapse(1.0)};
  CHECK(boundary_jacobian_bound(F, 0.5) == 0.0);
}
