#include "qch/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qch/errors.hpp"
#include "qch/kernels.hpp"
#include "qch/parallel.hpp"
#include "qch/quadrature.hpp"

namespace qch {

namespace {

constexpr double kPi = std::numbers::pi;

TrigSeries planar_series(std::initializer_list<std::array<double, 3>> terms) {
  // Each term {k, x-cos coefficient, y-sin coefficient}.
  int kmax = 1;
  for (const auto& t : terms) kmax = std::max(kmax, static_cast<int>(t[0]));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, kmax + 1), b = a;
  for (const auto& t : terms) {
    const int k = static_cast<int>(t[0]);
    a(0, k) += t[1];
    b(1, k) += t[2];
  }
  return TrigSeries(a, b);
}

using Mat2 = std::array<Complex, 4>;  // [[0, 1], [2, 3]]

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}
Mat2 inverse(const Mat2& x) { return {x[3], -x[1], -x[2], x[0]}; }
Complex mobius_apply(const Mat2& x, Complex z) { return (x[0] * z + x[1]) / (x[2] * z + x[3]); }
/// Moebius map sending p0, p1, p2 to 0, 1, infinity.
Mat2 to_standard(const std::array<Complex, 3>& p) {
  return {p[1] - p[2], -p[0] * (p[1] - p[2]), p[1] - p[0], -p[2] * (p[1] - p[0])};
}

double arc_length(const JordanCurve& h, double a, double b) {
  double total = 0.0;
  constexpr int kPanels = 64;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + (b - a) * k / kPanels;
    const double hi = a + (b - a) * (k + 1) / kPanels;
    total += integrate_gauss30([&](double t) { return h.evaluate(t).first.norm(); }, lo, hi);
  }
  return total;
}

double op_norm(const GradientFrame& g) { return frame_norms(g).op; }

double log_or_ninf(double x) { return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity(); }

}  // namespace

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "identity") return ScenarioKind::Identity;
  if (name == "affine") return ScenarioKind::Affine;
  if (name == "conformal_poly") return ScenarioKind::ConformalPoly;
  if (name == "harmonic_graph") return ScenarioKind::HarmonicGraph;
  if (name == "fourier") return ScenarioKind::Fourier;
  throw DomainError("unknown scenario '" + name + "'");
}

std::string scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Identity: return "identity";
    case ScenarioKind::Affine: return "affine";
    case ScenarioKind::ConformalPoly: return "conformal_poly";
    case ScenarioKind::HarmonicGraph: return "harmonic_graph";
    case ScenarioKind::Fourier: return "fourier";
  }
  return "unknown";
}

std::vector<CatalogEntry> scenario_catalog() {
  return {
      {"identity", "", "u(z) = z; K = 1, sup|du| = 1, area pi"},
      {"affine", "c (|c| < 1)", "u(z) = z + c conj(z); K = (1+|c|)/(1-|c|), J = 1 - c^2, image an ellipse"},
      {"conformal_poly", "eps, m (|eps m| < 1)", "u(z) = z + eps z^m / m; conformal, sup|du| = 1 + |eps|"},
      {"harmonic_graph", "eps, m (|eps m| < 1)", "u(z) = (x, y, eps Re z^m) in R^3; K = sqrt(1 + eps^2 m^2)"},
      {"fourier", "series (config file)", "harmonic extension of trigonometric boundary data; no exact fields"},
  };
}

NormalizationWitness normalization_witness(const JordanCurve& h) {
  const ArcLengthCurve arc(h.source_ptr());
  NormalizationWitness w;
  for (int k = 0; k < 3; ++k) w.preimages[static_cast<std::size_t>(k)] = arc.base_parameter(kTwoPi * k / 3.0);
  for (int k = 0; k < 3; ++k) {
    const double a = w.preimages[static_cast<std::size_t>(k)];
    const double b = k == 2 ? w.preimages[0] + kTwoPi : w.preimages[static_cast<std::size_t>(k + 1)];
    w.arcs[static_cast<std::size_t>(k)] = arc_length(h, a, b);
  }
  std::array<Complex, 3> roots, zeta;
  for (std::size_t k = 0; k < 3; ++k) {
    roots[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / 3.0);
    zeta[k] = std::polar(1.0, w.preimages[k]);
  }
  const Mat2 T = mul(inverse(to_standard(zeta)), to_standard(roots));
  w.a = mobius_apply(inverse(T), 0.0);
  if (!(std::abs(w.a) < 1.0)) throw NumericalConsistencyError("normalization: automorphism centre left the disk");
  w.theta = std::arg(mobius_apply(T, 1.0) * (1.0 - std::conj(w.a)) / (1.0 - w.a));
  return w;
}

BoundaryMap Scenario::normalized() const { return BoundaryMap{F.h, AngleMap::mobius(witness.a, witness.theta)}; }

Scenario make_scenario(ScenarioKind kind, const ScenarioParams& p) {
  Scenario sc;
  sc.kind = kind;
  sc.params = p;
  TrigSeries series;
  const double c = p.c, eps = p.eps;
  const int m = p.m;
  switch (kind) {
    case ScenarioKind::Identity:
      sc.name = "identity";
      series = planar_series({{1, 1.0, 1.0}});
      sc.exact.K = 1.0;
      sc.exact.gradient_sup = 1.0;
      sc.exact.area = kPi;
      sc.exact.frame = [](Complex z) {
        return GradientFrame{z, Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
      };
      sc.default_upsilon = kPi;
      break;
    case ScenarioKind::Affine: {
      if (!(std::abs(c) < 1.0)) throw DomainError("affine scenario requires |c| < 1");
      sc.name = "affine";
      series = planar_series({{1, 1.0 + c, 1.0 - c}});
      sc.exact.K = (1.0 + std::abs(c)) / (1.0 - std::abs(c));
      sc.exact.gradient_sup = 1.0 + std::abs(c);
      sc.exact.area = kPi * (1.0 - c * c);
      sc.exact.frame = [c](Complex z) {
        return GradientFrame{z, Eigen::Vector2d(1.0 + c, 0.0), Eigen::Vector2d(0.0, 1.0 - c)};
      };
      sc.default_upsilon = isoperimetric_coefficient(SurfaceClass::QcHarmonic, *sc.exact.K);
      break;
    }
    case ScenarioKind::ConformalPoly: {
      if (m < 1) throw DomainError("conformal_poly requires m >= 1");
      if (!(std::abs(eps * m) < 1.0)) throw DomainError("conformal_poly requires |eps m| < 1");
      sc.name = "conformal_poly";
      series = planar_series({{1, 1.0, 1.0}, {static_cast<double>(m), eps / m, eps / m}});
      sc.exact.K = 1.0;
      sc.exact.gradient_sup = 1.0 + std::abs(eps);
      sc.exact.area = kPi * (1.0 + eps * eps / m);
      sc.exact.frame = [eps, m](Complex z) {
        const Complex d = 1.0 + eps * std::pow(z, m - 1);
        return GradientFrame{z, Eigen::Vector2d(d.real(), d.imag()), Eigen::Vector2d(-d.imag(), d.real())};
      };
      sc.default_upsilon = kPi;
      break;
    }
    case ScenarioKind::HarmonicGraph: {
      if (m < 1) throw DomainError("harmonic_graph requires m >= 1");
      if (!(std::abs(eps * m) < 1.0)) throw DomainError("harmonic_graph requires |eps m| < 1");
      sc.name = "harmonic_graph";
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, std::max(m, 1) + 1), b = a;
      a(0, 1) = 1.0;
      b(1, 1) = 1.0;
      a(2, m) += eps;
      series = TrigSeries(a, b);
      const double em = eps * m;
      sc.exact.K = std::sqrt(1.0 + em * em);
      sc.exact.gradient_sup = *sc.exact.K;
      sc.exact.area = kTwoPi * integrate_tanh_sinh(
                                   [em, m](double r) {
                                     return r * std::sqrt(1.0 + em * em * std::pow(r, 2 * m - 2));
                                   },
                                   0.0, 1.0, 1e-14);
      sc.exact.frame = [em, m](Complex z) {
        const Complex w = em * std::pow(z, m - 1);
        return GradientFrame{z, Eigen::Vector3d(1.0, 0.0, w.real()), Eigen::Vector3d(0.0, 1.0, -w.imag())};
      };
      sc.default_upsilon = isoperimetric_coefficient(SurfaceClass::QcHarmonic, *sc.exact.K);
      break;
    }
    case ScenarioKind::Fourier:
      sc.name = "fourier";
      // e^{it} + 0.1 e^{-2it}: harmonic extension z + 0.1 conj(z)^2.
      series = p.series ? *p.series : planar_series({{1, 1.0, 1.0}, {2, 0.1, -0.1}});
      if (series.dimension() < 2) throw DomainError("fourier scenario needs at least two coordinates");
      sc.default_upsilon = 1.0;
      break;
  }
  JordanCurve h = JordanCurve::build(std::make_shared<TrigCurve>(series), p.node_count);
  sc.F = BoundaryMap{std::move(h), AngleMap::identity()};
  sc.witness = normalization_witness(sc.F.h);
  return sc;
}

// ---------------------------------------------------------------------------

CheckRecord make_check(std::string name, double lhs, double rhs, double tol, std::string detail) {
  CheckRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tol = tol;
  r.pass = r.margin >= -tol;
  r.detail = std::move(detail);
  return r;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

double VerificationReport::worst_margin() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) w = std::min(w, c.margin);
  return w;
}

std::array<double, 2> r2_point(std::size_t k) {
  // Additive recurrence with the plastic number (Roberts' R2 sequence).
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g, a2 = 1.0 / (g * g);
  const double n = static_cast<double>(k + 1);
  return {std::fmod(0.5 + a1 * n, 1.0), std::fmod(0.5 + a2 * n, 1.0)};
}

namespace {

struct WorstPoint {
  double margin = std::numeric_limits<double>::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t index = 0;
};

template <class F>
WorstPoint worst_over(std::size_t n, const F& lhs_rhs) {
  std::vector<std::array<double, 2>> v(n);
  parallel_for_chunks(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) v[i] = lhs_rhs(i);
  });
  WorstPoint w;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = v[i][1] - v[i][0];
    if (m < w.margin || std::isnan(m)) {
      w = {m, v[i][0], v[i][1], i};
      if (std::isnan(m)) break;
    }
  }
  return w;
}

std::string at_point(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst at z = %.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace

VerificationReport verify(const Scenario& sc, const VerifyConfig& cfg) {
  cfg.quadrature.validate();
  const QuadratureSpec& q = cfg.quadrature;
  VerificationReport rep;
  rep.scenario = sc.name;
  rep.quadrature = q;
  rep.upsilon = cfg.upsilon.value_or(sc.default_upsilon);

  // (1) curve constants of the image curve
  rep.constants = compute_curve_constants(sc.gamma(), cfg.mu, cfg.sup);
  if (!rep.constants.converged())
    throw NonConvergence("verify: curve constants did not converge within the refinement depth");
  const double lambda = rep.constants.chord_arc.value;
  rep.checks.push_back(make_check("chord_arc_at_least_one", 1.0, lambda, 1e-12));

  // (2) gradient and dilatation sup over the capped disk and on the circle
  const HarmonicExtension u(sc.F, q);
  const double cap = 1.0 - q.delta;
  auto ring_sup = [&](double r, double* dil) {
    const auto ring = u.ring(r);
    double s = 0.0;
    for (Eigen::Index j = 0; j < ring.ux.cols(); ++j) {
      const GradientFrame g{Complex(), ring.ux.col(j), ring.uy.col(j)};
      s = std::max(s, op_norm(g));
      if (dil) *dil = std::max(*dil, dilatation(g));
    }
    return s;
  };
  double K_num = 1.0;
  for (int i = 0; i <= cfg.radial_rings; ++i)
    rep.gradient_sup_raw = std::max(rep.gradient_sup_raw, ring_sup(cap * i / cfg.radial_rings, &K_num));
  const double s_outer = ring_sup(cap, nullptr);
  const double s_inner = ring_sup(1.0 - 2.0 * q.delta, nullptr);
  rep.gradient_sup_extrapolated = 2.0 * s_outer - s_inner;
  {
    std::vector<std::array<double, 2>> bf(static_cast<std::size_t>(cfg.boundary_frames));
    parallel_for_chunks(bf.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t j = b; j < e; ++j) {
        const GradientFrame g = u.boundary_frame(kTwoPi * static_cast<double>(j) / cfg.boundary_frames);
        bf[j] = {op_norm(g), dilatation(g)};
      }
    });
    for (const auto& x : bf) {
      rep.gradient_sup_boundary = std::max(rep.gradient_sup_boundary, x[0]);
      K_num = std::max(K_num, x[1]);
    }
  }
  rep.gradient_sup = std::max(rep.gradient_sup_raw, rep.gradient_sup_boundary);
  rep.K_numeric = K_num;
  if (sc.exact.K)
    rep.checks.push_back(make_check("dilatation_sup_vs_exact", std::abs(K_num - *sc.exact.K), cfg.exact_tol, 0.0));
  if (sc.exact.gradient_sup)
    rep.checks.push_back(make_check("gradient_sup_vs_exact", std::abs(rep.gradient_sup - *sc.exact.gradient_sup),
                                    cfg.exact_tol, 0.0));
  rep.K = sc.exact.K.value_or(K_num);
  const double K = rep.K;

  // (3) angular-derivative inequality and the quasiconformality inequality
  std::vector<Complex> grid;
  for (int i = 1; i <= cfg.lemma_grid; ++i)
    for (int j = 0; j < cfg.lemma_grid; ++j)
      grid.push_back(std::polar(cap * i / cfg.lemma_grid, kTwoPi * j / cfg.lemma_grid));
  {
    const WorstPoint w = worst_over(grid.size(), [&](std::size_t i) {
      const GradientFrame g = u.gradient(grid[i]);
      const double r = std::abs(grid[i]);
      return std::array<double, 2>{angular_derivative(g).squaredNorm(), r * r * K * jacobian(g)};
    });
    rep.checks.push_back(make_check("angular_derivative", w.lhs, w.rhs, cfg.equality_tol * std::max(1.0, w.rhs),
                                    at_point(grid[w.index])));
    const WorstPoint v = worst_over(grid.size(), [&](std::size_t i) {
      const GradientFrame g = u.gradient(grid[i]);
      const double hs = frame_norms(g).hs;
      return std::array<double, 2>{hs * hs, 0.5 * (K + 1.0 / K) * jacobian(g)};
    });
    rep.checks.push_back(make_check("quasiconformality", v.lhs, v.rhs, cfg.equality_tol * std::max(1.0, v.rhs),
                                    at_point(grid[v.index])));
  }

  // area and boundary length, used by (4) and (6)
  const IsoperimetricReport iso = isoperimetric_check(sc.F, q, rep.upsilon);
  rep.area = iso.area;
  rep.boundary_length = iso.length;
  if (sc.exact.area)
    rep.checks.push_back(make_check("area_vs_exact", std::abs(iso.area - *sc.exact.area),
                                    1e-8 * std::max(1.0, *sc.exact.area), 0.0));

  // (4) Hoelder estimate for the normalised boundary map
  rep.alpha = mori_exponent(K, lambda, rep.upsilon);
  rep.mori_constant = mori_constant(K, lambda, rep.upsilon, rep.area);
  {
    const BoundaryMap Fn = sc.normalized();
    const auto total = static_cast<std::size_t>(cfg.mori_pairs);
    const auto near = static_cast<std::size_t>(std::min(cfg.mori_near_pairs, cfg.mori_pairs));
    const WorstPoint w = worst_over(total, [&](std::size_t k) {
      const auto p = r2_point(k);
      double s = kTwoPi * p[0], t = kTwoPi * p[1];
      if (k < near) t = s + (p[1] < 0.5 ? 1.0 : -1.0) * std::pow(10.0, -1.0 - 7.0 * std::fmod(2.0 * p[1], 1.0));
      const double dz = circle_chord(s, t);
      if (dz == 0.0) return std::array<double, 2>{0.0, 0.0};
      return std::array<double, 2>{(Fn.value(s) - Fn.value(t)).norm() / std::pow(dz, rep.alpha), rep.mori_constant};
    });
    rep.checks.push_back(make_check("mori_holder", w.lhs, rep.mori_constant, 1e-12 * rep.mori_constant));
  }

  // (5) boundary Jacobian against its singular-integral bound
  {
    const WorstPoint w = worst_over(static_cast<std::size_t>(cfg.boundary_taus), [&](std::size_t j) {
      const double tau = kTwoPi * static_cast<double>(j) / cfg.boundary_taus;
      return std::array<double, 2>{jacobian(u.boundary_frame(tau)), boundary_jacobian_bound(sc.F, tau, q)};
    });
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst at tau = %.6g", kTwoPi * static_cast<double>(w.index) / cfg.boundary_taus);
    rep.checks.push_back(
        make_check("boundary_jacobian", w.lhs, w.rhs, cfg.equality_tol * std::max(1.0, w.rhs), buf));
  }

  // (6) isoperimetric ratio
  rep.checks.push_back(make_check("isoperimetric", iso.ratio, iso.limit, cfg.equality_tol));

  // (7) Lipschitz bound: gradient sup and interior difference quotients, in log space
  BoundInputs in;
  in.K = K;
  in.mu = cfg.mu;
  in.upsilon = rep.upsilon;
  in.lambda = lambda;
  in.c_gamma = rep.constants.holder.value;
  in.length = rep.constants.length;
  rep.bound = lipschitz_bound(in);
  const double sup_est = std::max(rep.gradient_sup, rep.gradient_sup_extrapolated);
  rep.checks.push_back(make_check("gradient_sup_vs_L", std::log(sup_est), rep.bound.log_L, 0.0));
  {
    const auto n = static_cast<std::size_t>(cfg.interior_pairs);
    auto point = [&](std::size_t k) {
      const auto p = r2_point(k);
      return std::polar(cap * std::sqrt(p[0]), kTwoPi * p[1]);
    };
    const WorstPoint w = worst_over(n, [&](std::size_t k) {
      const Complex z = point(2 * k), v = point(2 * k + 1);
      const double dz = std::abs(z - v);
      if (dz == 0.0) return std::array<double, 2>{-std::numeric_limits<double>::infinity(), 0.0};
      return std::array<double, 2>{log_or_ninf((u.value(z) - u.value(v)).norm()) - std::log(dz),
                                   std::log(K) + rep.bound.log_L};
    });
    rep.checks.push_back(make_check("interior_lipschitz", w.lhs, std::log(K) + rep.bound.log_L, 0.0));
  }
  return rep;
}

}  // namespace qch
