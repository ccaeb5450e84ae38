#pragma once

#include "qch/curve.hpp"
#include "qch/curve_constants.hpp"
#include "qch/poisson.hpp"

namespace qch {

/// Kernel value at (s, t) together with an upper bound for it.
struct KernelEvaluation {
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double c_h = 0.0;  ///< Hoelder coefficient, when the bound uses one
  bool holds(double tol = 1e-9) const { return value <= bound + tol; }
};

/// sqrt(|X|^2 |Y|^2 - <X, Y>^2), X = h(t) - h(s), Y = h'(s). Radicands down
/// to -1e-14 (relative to |X|^2 |Y|^2) are clamped to zero.
double kernel_K(const JordanCurve& h, double s, double t);

/// |e^{is} - e^{it}|.
double circle_chord(double s, double t);

/// (|h(s) - h(t)| / E) * int_0^{pi E} omega, E = |e^{is} - e^{it}|.
KernelEvaluation kernel_bound_dini(const JordanCurve& h, const ModulusOfContinuity& omega, double s,
                                   double t);

/// c_h = sup |h'(x) - h'(y)| / |x - y|^mu / (1 + mu), h' in the curve parameter.
double holder_kernel_coefficient(const JordanCurve& h, double mu);

/// c_h |h(s) - h(t)| E^mu.
KernelEvaluation kernel_bound_holder(const JordanCurve& h, double mu, double c_h, double s, double t);
KernelEvaluation kernel_bound_holder(const JordanCurve& h, double mu, double s, double t);

/// The Dini bound evaluated for omega(d) = (1 + mu) c_h d^mu, in closed form:
/// c_h pi^{1+mu} |h(s) - h(t)| E^mu. Dominates the tabulated Dini bound.
KernelEvaluation kernel_holder_majorant(const JordanCurve& h, double mu, double c_h, double s, double t);

/// |K_{h o e^{if}}(s, t) - |f'(s)| K_h(f(s), f(t))|.
double kernel_composition_check(const JordanCurve& h, const AngleMap& f, double s, double t);

struct JacobianBoundOptions {
  enum class Method {
    /// Periodic trapezoid rule anchored at tau; the tau node takes the
    /// diagonal limit of the integrand. Doubles M until two levels agree.
    Trapezoid,
    /// Split at |t - tau| = 2 pi / M: closed-form Hoelder majorant inside,
    /// trapezoid outside. An upper estimate of the integral.
    Majorant,
  };
  Method method = Method::Trapezoid;
  double mu = 1.0;    ///< Majorant only
  double c_h = -1.0;  ///< Majorant only; negative means estimate from h
  double tol = 1e-12;
};

/// |f'(tau)| * int K_h(f(tau), f(t)) / (4 pi sin^2((t - tau)/2)) dt.
double boundary_jacobian_bound(const BoundaryMap& F, double tau, const QuadratureSpec& q = {},
                               const JacobianBoundOptions& options = {});

}  // namespace qch
