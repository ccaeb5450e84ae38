#pragma once

#include <optional>

#include "qch/poisson.hpp"

namespace qch {

enum class SurfaceClass { Minimal, Harmonic, QcHarmonic, Custom };

/// Minimal -> pi, Harmonic -> 1, QcHarmonic -> max{2 pi / (1 + K^2), 1},
/// Custom -> `param` after a range check on (0, pi]. `param` is K for QcHarmonic.
double isoperimetric_coefficient(SurfaceClass cls, double param = 0.0);

/// alpha = 8 Upsilon / (pi K (1 + 2 lambda)^2).
double mori_exponent(double K, double lambda, double upsilon);

enum class MoriVariant {
  Statement,  ///< 4 (1 + 2 lambda) 2^alpha sqrt(2 pi K |M| / log 2)
  Proof,      ///< same with 2^{alpha/2}
};

double mori_constant(double K, double lambda, double upsilon, double area,
                     MoriVariant variant = MoriVariant::Statement);

struct BoundInputs {
  double K = 1.0;
  double mu = 1.0;
  double upsilon = 1.0;
  double lambda = 1.0;
  double c_gamma = 0.0;
  double length = 0.0;
  std::optional<double> area;  ///< defaults to length^2 / 4
  void validate() const;
  double area_or_default() const { return area ? *area : 0.25 * length * length; }
};

struct BoundResult {
  double alpha = 0.0;
  double exponent = 0.0;  ///< (2 - alpha) / (mu alpha)
  double log_L = 0.0;     ///< -inf when C_gamma = 0
  double L = 0.0;         ///< exp(log_L); +inf when it overflows
  double mori = 0.0;      ///< L_gamma(K) at the same area
  double area = 0.0;
};

/// L = 8 (K C pi (2 - alpha) / (2 mu alpha))^{(2 - alpha)/(mu alpha)}
///       * (4 (1 + 2 lambda) sqrt(2 pi K |M| / log 2))^{2/alpha},
/// which for the default area is the |gamma| sqrt(pi K / log 4) form.
/// Requires Upsilon >= 1.
BoundResult lipschitz_bound(const BoundInputs& in);

/// L = 8 (C x pi / (2 mu))^{x/mu} (4 (1 + 2 lambda) |gamma| / sqrt(log 4))^{(1/2 + lambda)^2},
/// x = -3/4 + lambda (1 + lambda). At mu = 1 pass the largest curvature as C.
BoundResult minimal_surface_bound(double lambda, double mu, double c_gamma, double length);

struct IsoperimetricReport {
  double area = 0.0;
  double length = 0.0;
  double ratio = 0.0;  ///< area / length^2
  double limit = 0.0;  ///< 1 / (4 Upsilon)
  double margin = 0.0; ///< limit - ratio
  double upsilon = 0.0;
  double richardson_change = 0.0;  ///< last correction of the extrapolation
};

/// Area of the harmonic extension, int int J_u, by Gauss-Legendre in r and
/// the trapezoid rule in angle on [0, 1 - delta] and on annuli up to
/// 1 - delta / 16, Richardson-extrapolated to r = 1.
double surface_area(const BoundaryMap& F, const QuadratureSpec& q = {}, double* last_change = nullptr);

/// int |F'(t)| dt by the periodic trapezoid rule.
double boundary_length(const BoundaryMap& F, int M = 4096);

IsoperimetricReport isoperimetric_check(const BoundaryMap& F, const QuadratureSpec& q, double upsilon);

}  // namespace qch
