#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qch {

/// Double-exponential quadrature on [a, b]; tolerates integrable endpoint
/// singularities. Throws NonConvergence if the error estimate exceeds tol.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-10);

/// Fixed 30-point Gauss-Legendre rule on [a, b].
double integrate_gauss30(const std::function<double(double)>& f, double a, double b);

/// Nodes and weights of the same rule, mapped to [a, b].
void gauss30_rule(double a, double b, std::vector<double>& x, std::vector<double>& w);

/// (2*pi/M) * sum f(t0 + 2*pi*j/M) over j < M, pairwise-summed.
double periodic_trapezoid(const std::function<double(double)>& f, int M, double t0 = 0.0);

/// Pairwise (cascade) summation of v[0..n).
double pairwise_sum(const double* v, std::size_t n);

}  // namespace qch
