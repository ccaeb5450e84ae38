#pragma once

#include <functional>
#include <vector>

#include "qch/curve.hpp"

namespace qch {

/// Periodic trapezoid sum of |d_j| over the node grid.
double curve_length(const JordanCurve& curve);

/// Same curve, reparametrised so |g'| = length / (2*pi) on [0, 2*pi).
/// Returns the input unchanged when it is already arc-length.
JordanCurve arc_length_reparametrize(const JordanCurve& curve);

/// Pairwise supremum search: coarse scan over all pairs, then pattern
/// search around the best candidates with the step halved per level.
struct SupOptions {
  int max_depth = 30;
  int coarse_nodes = 512;
  int candidates = 8;
  /// Pairs closer than band coarse spacings use the diagonal limit.
  int band = 10;
  double tol = 1e-6;
};

struct SupEstimate {
  double value = 0.0;
  bool converged = false;
  int depth = 0;  ///< refinement levels completed
  double s = 0.0;
  double t = 0.0;  ///< maximising pair (s == t for a diagonal limit)
};

/// sup (shorter arc)/(chord). Requires an arc-length curve.
SupEstimate chord_arc_constant(const JordanCurve& curve, const SupOptions& options = {});

/// sup |g'(t) - g'(s)| / |t - s|^mu in true arc length (units length^-mu).
/// Requires an arc-length curve; mu in (0, 1]. At mu = 1 the value is
/// lifted to the maximal curvature, the exact supremum for smooth curves.
SupEstimate holder_derivative_constant(const JordanCurve& curve, double mu,
                                       const SupOptions& options = {});

/// sup |h'(t) - h'(s)| / |t - s|^mu in the curve's own parameter (any
/// parametrisation); the mu = 1 diagonal limit is |h''|.
SupEstimate derivative_holder_sup(const JordanCurve& curve, double mu, const SupOptions& options = {});

/// Largest curvature |h' ^ h''| / |h'|^3 (parametrisation invariant).
double max_curvature(const JordanCurve& curve);

/// Nondecreasing piecewise-linear modulus of continuity, constant beyond
/// its last abscissa. A leading (0, 0) node is added when absent.
class ModulusOfContinuity {
 public:
  ModulusOfContinuity(std::vector<double> delta, std::vector<double> omega);
  double operator()(double x) const;
  /// Exact integral of the interpolant over [0, y].
  double integral(double y) const;
  const std::vector<double>& delta() const { return delta_; }
  const std::vector<double>& omega() const { return omega_; }

 private:
  std::vector<double> delta_;
  std::vector<double> omega_;
};

/// For each step d: sup over |t - s| <= d of |h'(t) - h'(s)|, with h' in the
/// curve's own parameter. Output is made nondecreasing.
ModulusOfContinuity dini_modulus_table(const JordanCurve& curve, std::vector<double> steps);

struct CurveConstants {
  double length = 0.0;
  SupEstimate chord_arc;
  SupEstimate holder;
  double mu = 1.0;
  double max_curvature = 0.0;
  int refinement_depth = 0;
  bool converged() const { return chord_arc.converged && holder.converged; }
};

/// All constants of a curve in one pass (reparametrises internally).
CurveConstants compute_curve_constants(const JordanCurve& curve, double mu,
                                       const SupOptions& options = {});

/// int_{0+}^y x^-2 int_0^x omega(a t) dt dx, nested double-exponential rules.
double dini_lhs(const std::function<double(double)>& omega, double y, double a = 1.0);
/// int_{0+}^y omega(a x)/x - omega(a x)/y dx.
double dini_rhs(const std::function<double(double)>& omega, double y, double a = 1.0);

}  // namespace qch
