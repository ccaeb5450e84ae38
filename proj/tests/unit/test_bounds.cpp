#include "doctest.h"
#include "qch/bounds.hpp"
#include "qch/errors.hpp"
#include "qch/scenarios.hpp"
#include "support.hpp"

using namespace qch;
using namespace qch::test;

TEST_CASE("isoperimetric coefficients") {
  CHECK(isoperimetric_coefficient(SurfaceClass::Minimal) == doctest::Approx(M_PI));
  CHECK(isoperimetric_coefficient(SurfaceClass::Harmonic) == 1.0);
  CHECK(isoperimetric_coefficient(SurfaceClass::QcHarmonic, 1.0) == doctest::Approx(M_PI));
  CHECK(isoperimetric_coefficient(SurfaceClass::QcHarmonic, 3.0) == 1.0);
  CHECK(isoperimetric_coefficient(SurfaceClass::Custom, 2.0) == 2.0);
  CHECK_THROWS_AS(isoperimetric_coefficient(SurfaceClass::Custom, 4.0), DomainError);
  CHECK_THROWS_AS(isoperimetric_coefficient(SurfaceClass::QcHarmonic, 0.5), DomainError);
}

TEST_CASE("mori exponent and constant, frozen bits") {
  CHECK(mori_exponent(1.0, M_PI / 2, 1.0) == 0x1.300b0f8cdf846p-3);
  CHECK(mori_exponent(1.0, 1.5708, 1.0) == 0x1.300ac8dc7ce6ap-3);
  CHECK(mori_constant(1.0, M_PI / 2, 1.0, M_PI) == 0x1.87f30b591efe2p+6);
  CHECK(mori_constant(1.0, M_PI / 2, 1.0, M_PI, MoriVariant::Proof) <
        mori_constant(1.0, M_PI / 2, 1.0, M_PI, MoriVariant::Statement));
  CHECK_THROWS_AS(mori_exponent(0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(mori_exponent(1.0, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(mori_constant(1.0, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("lipschitz bound, frozen log-space bits") {
  BoundInputs in;
  in.lambda = M_PI / 2;
  in.c_gamma = 1.0;
  in.length = kTwoPi;
  const BoundResult r = lipschitz_bound(in);
  CHECK(r.log_L == 0x1.ad1884c9b789ap+6);
  CHECK(r.L == doctest::Approx(std::exp(r.log_L)));
  CHECK(r.area == doctest::Approx(M_PI * M_PI));
  in.lambda = 1.5708;
  in.length = 6.2832;
  CHECK(lipschitz_bound(in).log_L == 0x1.ad19046f8e4fcp+6);
}

TEST_CASE("lipschitz bound edge cases") {
  BoundInputs in;
  in.lambda = 2.0;
  in.length = 1.0;
  in.c_gamma = 0.0;
  const BoundResult z = lipschitz_bound(in);
  CHECK(std::isinf(z.log_L));
  CHECK(z.log_L < 0);
  CHECK(z.L == 0.0);
  in.c_gamma = 1.0;
  in.upsilon = 0.9;
  CHECK_THROWS_AS(lipschitz_bound(in), DomainError);
  in.upsilon = 1.0;
  in.area = 1.0;  // > length^2 / 4
  CHECK_THROWS_AS(lipschitz_bound(in), DomainError);
  in.area.reset();
  in.length = -1.0;
  CHECK_THROWS_AS(lipschitz_bound(in), DomainError);
  // Huge constants overflow L but not log L.
  in.length = 1e6;
  in.K = 50;
  in.lambda = 20;
  const BoundResult big = lipschitz_bound(in);
  CHECK(std::isfinite(big.log_L));
  CHECK(std::isinf(big.L));
}

TEST_CASE("bound grows with K and lambda") {
  BoundInputs in;
  in.c_gamma = 1.0;
  in.length = kTwoPi;
  in.lambda = 1.5;
  const double base = lipschitz_bound(in).log_L;
  in.K = 1.5;
  CHECK(lipschitz_bound(in).log_L > base);
  in.K = 1.0;
  in.lambda = 1.8;
  CHECK(lipschitz_bound(in).log_L > base);
}

TEST_CASE("minimal surface bound, frozen circle value") {
  CHECK(minimal_surface_bound(M_PI / 2, 1.0, 1.0, kTwoPi).log_L == 0x1.ab2a4c828e26p+4);
}

TEST_CASE("minimal surface bound is the K = 1, Upsilon = pi specialisation") {
  for (double lam : {1.0, 1.2, M_PI / 2, 2.0})
    for (double mu : {0.5, 1.0}) {
      BoundInputs in;
      in.K = 1.0;
      in.mu = mu;
      in.upsilon = M_PI;
      in.lambda = lam;
      in.c_gamma = 0.7;
      in.length = 5.0;
      in.area = 25.0 / (4 * M_PI);
      const double a = minimal_surface_bound(lam, mu, 0.7, 5.0).log_L;
      const double b = lipschitz_bound(in).log_L;
      CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
    }
}

TEST_CASE("surface area and isoperimetric ratio") {
  const Scenario id = make_scenario(ScenarioKind::Identity);
  double change = 0.0;
  CHECK(rel_err(surface_area(id.F, {}, &change), M_PI) < 1e-10);
  CHECK(change < 1e-6);
  CHECK(boundary_length(id.F) == doctest::Approx(kTwoPi).epsilon(1e-14));
  const IsoperimetricReport rep = isoperimetric_check(id.F, {}, M_PI);
  CHECK(std::abs(rep.ratio - 1 / (4 * M_PI)) < 1e-12);
  CHECK(rep.margin > -1e-12);

  const Scenario aff = make_scenario(ScenarioKind::Affine, {0.5});
  CHECK(rel_err(surface_area(aff.F), M_PI * 0.75) < 1e-8);

  const BoundaryMap flat{circle(), AngleMap::collapse(0.0)};
  CHECK_THROWS_AS(isoperimetric_check(flat, {}, 1.0), DegenerateSurface);
}

TEST_CASE("mori constant: sqrt homogeneity in the area, monotone in lambda") {
  const double base = mori_constant(1.3, 1.4, 1.0, 2.0);
  for (double c : {0.5, 2.0, 10.0}) CHECK(rel_err(mori_constant(1.3, 1.4, 1.0, 2.0 * c * c), c * base) < 1e-14);
  double prev = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double v = mori_constant(1.0, 1.0 + 0.05 * k, 1.0, 1.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("default isoperimetric constants of the scenarios") {
  CHECK(make_scenario(ScenarioKind::Identity).default_upsilon == doctest::Approx(M_PI));
  CHECK(make_scenario(ScenarioKind::ConformalPoly).default_upsilon == doctest::Approx(M_PI));
  CHECK(make_scenario(ScenarioKind::Affine, {0.2}).default_upsilon == doctest::Approx(2 * M_PI / (1 + 2.25)));
  CHECK(make_scenario(ScenarioKind::Affine, {0.9}).default_upsilon == 1.0);
  CHECK(make_scenario(ScenarioKind::Fourier).default_upsilon == 1.0);
}
