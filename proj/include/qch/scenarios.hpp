#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qch/bounds.hpp"
#include "qch/curve_constants.hpp"
#include "qch/poisson.hpp"

namespace qch {

enum class ScenarioKind { Identity, Affine, ConformalPoly, HarmonicGraph, Fourier };

struct ScenarioParams {
  double c = 0.2;    ///< affine: u = z + c conj(z), real c
  double eps = 0.3;  ///< conformal_poly / harmonic_graph amplitude
  int m = 2;         ///< conformal_poly / harmonic_graph degree
  /// fourier: boundary values as a trigonometric series; empty selects the
  /// built-in example e^{it} + 0.1 e^{-2it}.
  std::optional<TrigSeries> series;
  int node_count = 512;
};

/// Closed-form data of a catalog map (absent for custom boundary data).
struct ExactData {
  std::optional<double> K;
  std::optional<double> gradient_sup;  ///< sup of the operator norm of du
  std::optional<double> area;
  std::function<GradientFrame(Complex)> frame;  ///< valid on the closed disk
};

/// Preimages zeta_k of three points splitting the image curve into arcs of
/// equal length, and the disk automorphism phi with phi(e^{2 pi i k/3}) = zeta_k.
struct NormalizationWitness {
  std::array<double, 3> preimages{};  ///< angles of zeta_k, zeta_0 = 1
  std::array<double, 3> arcs{};       ///< image arc lengths zeta_k -> zeta_{k+1}
  Complex a;
  double theta = 0.0;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Identity;
  ScenarioParams params;
  BoundaryMap F;  ///< catalog boundary map, F(e^{it}) = u(e^{it})
  ExactData exact;
  NormalizationWitness witness;
  double default_upsilon = 1.0;

  const JordanCurve& gamma() const { return F.h; }
  /// F composed with the normalising automorphism.
  BoundaryMap normalized() const;
};

ScenarioKind parse_scenario_kind(const std::string& name);
std::string scenario_kind_name(ScenarioKind kind);

struct CatalogEntry {
  std::string name;
  std::string params;
  std::string description;
};
std::vector<CatalogEntry> scenario_catalog();

Scenario make_scenario(ScenarioKind kind, const ScenarioParams& params = {});

/// Equal-arc preimages on a curve and the automorphism carrying the cube
/// roots of unity to them.
NormalizationWitness normalization_witness(const JordanCurve& h);

struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - lhs
  double tol = 0.0;
  bool pass = false;  ///< margin >= -tol
  std::string detail;
};

CheckRecord make_check(std::string name, double lhs, double rhs, double tol, std::string detail = {});

struct VerifyConfig {
  double mu = 1.0;
  std::optional<double> upsilon;
  QuadratureSpec quadrature;
  SupOptions sup;
  int radial_rings = 64;
  int lemma_grid = 32;
  int boundary_taus = 32;
  int boundary_frames = 1024;
  int mori_pairs = 10000;
  int mori_near_pairs = 1000;
  int interior_pairs = 10000;
  double exact_tol = 1e-6;
  double equality_tol = 1e-9;
};

struct VerificationReport {
  std::string scenario;
  CurveConstants constants;
  QuadratureSpec quadrature;
  double K = 1.0;  ///< dilatation used by the bounds (exact when known)
  double K_numeric = 1.0;
  double upsilon = 1.0;
  double gradient_sup_raw = 0.0;
  double gradient_sup_boundary = 0.0;
  double gradient_sup_extrapolated = 0.0;
  double gradient_sup = 0.0;  ///< max(raw, boundary)
  double area = 0.0;
  double boundary_length = 0.0;
  double alpha = 0.0;
  double mori_constant = 0.0;
  BoundResult bound;
  std::vector<CheckRecord> checks;

  bool pass() const;
  double worst_margin() const;
};

/// Runs the seven verification stages on a scenario. Inequality failures are
/// recorded; numerical failures propagate as exceptions.
VerificationReport verify(const Scenario& scenario, const VerifyConfig& config = {});

/// Low-discrepancy points in [0, 1)^2 (additive recurrence).
std::array<double, 2> r2_point(std::size_t k);

}  // namespace qch
