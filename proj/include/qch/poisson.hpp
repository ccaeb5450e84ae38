#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qch/curve.hpp"

namespace qch {

using Complex = std::complex<double>;

struct QuadratureSpec {
  int M = 1024;          ///< angular nodes, power of two, >= 64
  double delta = 0.05;   ///< radial cap |z| <= 1 - delta, delta in (0, 0.5]
  bool adaptive = false; ///< double M beyond the cap until values settle
  int max_M = 1 << 16;
  double tol = 1e-12;    ///< agreement between successive adaptive levels
  void validate() const;
};

/// Weak homeomorphism f of the circle: nondecreasing, f(t + 2*pi) = f(t) + 2*pi.
/// The collapsed map is the degenerate limit sending the circle to one point.
class AngleMap {
 public:
  /// The identity map.
  AngleMap();
  static AngleMap identity(double shift = 0.0);
  /// f(t) = t + shift + sum_k a_k cos(k t) + b_k sin(k t); needs f' >= 0.
  static AngleMap fourier(std::vector<double> a, std::vector<double> b, double shift = 0.0);
  /// Boundary angle of z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1.
  static AngleMap mobius(Complex a, double theta);
  /// Constant map f = f0 (F is constant, f' = 0).
  static AngleMap collapse(double f0);
  /// Arbitrary smooth map with derivative; degree and monotonicity are checked.
  static AngleMap from_function(std::function<double(double)> f, std::function<double(double)> df,
                                std::string name);

  double operator()(double t) const { return f_(t); }
  double derivative(double t) const { return df_(t); }
  bool collapsed() const { return collapsed_; }
  const std::string& name() const { return name_; }

 private:
  AngleMap(std::function<double(double)> f, std::function<double(double)> df, std::string name,
           bool collapsed);
  void validate() const;
  std::function<double(double)> f_;
  std::function<double(double)> df_;
  std::string name_;
  bool collapsed_ = false;
};

/// F(e^{it}) = h(f(t)).
struct BoundaryMap {
  JordanCurve h;
  AngleMap f;

  int dimension() const { return h.dimension(); }
  Eigen::VectorXd value(double t) const;
  /// dF/dt = h'(f(t)) f'(t).
  Eigen::VectorXd derivative(double t) const;
};

struct GradientFrame {
  Complex z;
  Eigen::VectorXd ux;
  Eigen::VectorXd uy;
};

struct FrameNorms {
  double hs = 0.0;
  double op = 0.0;
  double min = 0.0;
};

/// (1 - r^2) / (2*pi (1 - 2 r cos t + r^2)); 0 <= r < 1.
double poisson_kernel(double r, double t);

/// Harmonic extension u = P[F] with cached boundary samples. Point values
/// and gradients use the periodic trapezoid rule with the closed-form kernel
/// and kernel derivatives; whole circles |z| = r are evaluated spectrally.
class HarmonicExtension {
 public:
  HarmonicExtension(BoundaryMap F, QuadratureSpec q = {});

  const BoundaryMap& map() const { return F_; }
  const QuadratureSpec& spec() const { return q_; }
  int dimension() const { return F_.dimension(); }
  /// Boundary samples F(t_j), t_j = 2*pi*j/M.
  const Eigen::MatrixXd& samples() const { return *level(q_.M); }

  Eigen::VectorXd value(Complex z) const;
  GradientFrame gradient(Complex z) const;

  /// u, u_x, u_y at r e^{i 2 pi j / M}, j < M (M of the quadrature).
  struct Ring {
    Eigen::MatrixXd u, ux, uy;
  };
  Ring ring(double r) const;

  /// Gradient frame of the boundary values' harmonic extension at e^{i tau}
  /// from the spectrum of the samples; needs resolved samples.
  GradientFrame boundary_frame(double tau) const;
  /// Largest coefficient in the top quarter of the spectrum relative to the largest.
  double spectral_tail() const { return tail_; }

 private:
  std::shared_ptr<const Eigen::MatrixXd> level(int M) const;
  void weights(Complex z, int M, Eigen::VectorXd* p, Eigen::VectorXd* gx, Eigen::VectorXd* gy) const;
  void check_point(Complex z) const;

  BoundaryMap F_;
  QuadratureSpec q_;
  Eigen::MatrixXcd coeff_;  ///< c_k, FFT ordering, n x M
  double tail_ = 0.0;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Eigen::MatrixXd>> levels_;
};

Eigen::VectorXd poisson_extend(const BoundaryMap& F, Complex z, const QuadratureSpec& q = {});
GradientFrame gradient(const BoundaryMap& F, Complex z, const QuadratureSpec& q = {});

/// sqrt(|u_x|^2 |u_y|^2 - <u_x, u_y>^2).
double jacobian(const GradientFrame& frame);
/// Hilbert-Schmidt (normalised), operator and minimal norm; op * min = J.
FrameNorms frame_norms(const GradientFrame& frame);
/// op / min; throws DegenerateFrame when min vanishes.
double dilatation(const GradientFrame& frame);

/// du/dt at z = r e^{it}: r (u_y cos t - u_x sin t).
Eigen::VectorXd angular_derivative(const GradientFrame& frame);

struct AngularReport {
  double worst_margin = 1.0 / 0.0;  ///< min over points of r^2 K J - |u_t|^2
  Complex worst_z;
  std::size_t points = 0;
  std::size_t violations = 0;
  double tol = 0.0;
  bool pass() const { return violations == 0; }
};

/// Checks |du/dt|^2 <= r^2 K J(z) at every grid point.
AngularReport angular_derivative_check(const HarmonicExtension& u, const std::vector<Complex>& grid,
                                       double K, double tol = 1e-10);

}  // namespace qch
