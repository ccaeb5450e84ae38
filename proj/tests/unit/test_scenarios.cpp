#include "doctest.h"
#include "qch/errors.hpp"
#include "qch/scenarios.hpp"
#include "support.hpp"

using namespace qch;
using namespace qch::test;

TEST_CASE("catalog and names") {
  const auto cat = scenario_catalog();
  CHECK(cat.size() == 5);
  for (const auto& e : cat) CHECK(scenario_kind_name(parse_scenario_kind(e.name)) == e.name);
  CHECK_THROWS_AS(parse_scenario_kind("spiral"), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_scenario(ScenarioKind::Affine, {1.0}), DomainError);
  CHECK_THROWS_AS(make_scenario(ScenarioKind::ConformalPoly, {0.2, 0.6, 2}), DomainError);
  CHECK_THROWS_AS(make_scenario(ScenarioKind::ConformalPoly, {0.2, 0.1, 0}), DomainError);
  CHECK_THROWS_AS(make_scenario(ScenarioKind::HarmonicGraph, {0.2, 0.5, 2}), DomainError);
}

TEST_CASE("exact data") {
  const Scenario a = make_scenario(ScenarioKind::Affine, {0.2});
  CHECK(*a.exact.K == doctest::Approx(1.5));
  CHECK(*a.exact.gradient_sup == doctest::Approx(1.2));
  CHECK(*a.exact.area == doctest::Approx(M_PI * 0.96));
  const Scenario c = make_scenario(ScenarioKind::ConformalPoly, {0.2, 0.3, 2});
  CHECK(*c.exact.K == 1.0);
  CHECK(*c.exact.gradient_sup == doctest::Approx(1.3));
  const Scenario g = make_scenario(ScenarioKind::HarmonicGraph, {0.2, 0.1, 2});
  CHECK(g.gamma().dimension() == 3);
  const Scenario f = make_scenario(ScenarioKind::Fourier);
  CHECK_FALSE(f.exact.K.has_value());
}

TEST_CASE("normalization witness splits the image into equal arcs") {
  for (ScenarioKind k : {ScenarioKind::Identity, ScenarioKind::Affine, ScenarioKind::ConformalPoly}) {
    const Scenario sc = make_scenario(k, {0.2, 0.3, 2});
    const auto& w = sc.witness;
    const double total = w.arcs[0] + w.arcs[1] + w.arcs[2];
    for (double a : w.arcs) CHECK(a == doctest::Approx(total / 3).epsilon(1e-10));
    CHECK(std::abs(w.a) < 1.0);
    // The automorphism sends the cube roots of unity to the preimages.
    for (int j = 0; j < 3; ++j) {
      const Complex z = std::polar(1.0, kTwoPi * j / 3);
      const Complex phi = std::polar(1.0, w.theta) * (z - w.a) / (1.0 - std::conj(w.a) * z);
      CHECK(std::abs(phi - std::polar(1.0, w.preimages[j])) < 1e-10);
    }
    // The normalised map takes the cube roots to equal-arc points.
    const BoundaryMap N = sc.normalized();
    for (int j = 0; j < 3; ++j)
      CHECK((N.value(kTwoPi * j / 3) - sc.F.value(w.preimages[j])).norm() < 1e-10);
  }
  // Identity needs no normalisation.
  const Scenario id = make_scenario(ScenarioKind::Identity);
  CHECK(std::abs(id.witness.a) < 1e-12);
}

TEST_CASE("checks and report bookkeeping") {
  const CheckRecord ok = make_check("x", 1.0, 1.0 - 1e-12, 1e-9);
  CHECK(ok.pass);
  CHECK(ok.margin == doctest::Approx(-1e-12));
  const CheckRecord bad = make_check("y", 2.0, 1.0, 1e-9);
  CHECK_FALSE(bad.pass);
  VerificationReport r;
  r.checks = {ok};
  CHECK(r.pass());
  r.checks.push_back(bad);
  CHECK_FALSE(r.pass());
  CHECK(r.worst_margin() == doctest::Approx(-1.0));
}

TEST_CASE("r2 sequence fills the square") {
  int quadrant[4] = {0, 0, 0, 0};
  for (std::size_t k = 0; k < 4000; ++k) {
    const auto p = r2_point(k);
    CHECK(p[0] >= 0.0);
    CHECK(p[0] < 1.0);
    ++quadrant[(p[0] < 0.5 ? 0 : 1) + (p[1] < 0.5 ? 0 : 2)];
  }
  for (int q : quadrant) CHECK(std::abs(q - 1000) < 20);
}

TEST_CASE("verify: harmonic graph in space") {
  const Scenario sc = make_scenario(ScenarioKind::HarmonicGraph, {0.2, 0.1, 2});
  const VerificationReport r = verify(sc);
  for (const auto& c : r.checks) {
    INFO(c.name << " lhs=" << c.lhs << " rhs=" << c.rhs);
    CHECK(c.pass);
  }
  CHECK(r.K_numeric == doctest::Approx(*sc.exact.K).epsilon(1e-6));
}

TEST_CASE("verify: fourier boundary data without exact fields") {
  const VerificationReport r = verify(make_scenario(ScenarioKind::Fourier));
  CHECK(r.pass());
  CHECK(r.K >= 1.0);
  for (const auto& c : r.checks) CHECK(c.name.find("vs_exact") == std::string::npos);
}
