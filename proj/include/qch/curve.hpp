#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <variant>

#include "qch/fourier.hpp"

namespace qch {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Position and first two parameter derivatives at parameter t.
struct CurvePoint {
  double t = 0.0;
  Eigen::VectorXd position;
  Eigen::VectorXd first;
  Eigen::VectorXd second;
};

/// A 2*pi-periodic parametrisation t -> R^n with two derivatives.
class CurveSource {
 public:
  virtual ~CurveSource() = default;
  virtual int dimension() const = 0;
  virtual CurvePoint evaluate(double t) const = 0;
  /// Whether `node_count` uniform samples resolve the derivative data.
  virtual bool resolved_by(int node_count) const = 0;
};

/// Curve given by a finite Fourier series in every coordinate. Covers the
/// analytic descriptors (circle, ellipse, scenario images) and spectral
/// interpolants of raw samples.
class TrigCurve final : public CurveSource {
 public:
  explicit TrigCurve(TrigSeries series, bool from_samples = false);
  int dimension() const override { return series_.dimension(); }
  CurvePoint evaluate(double t) const override;
  bool resolved_by(int node_count) const override;
  const TrigSeries& series() const { return series_; }

 private:
  TrigSeries series_;
  bool from_samples_;
};

/// Reparametrisation of a base curve by normalised arc length: the
/// parameter runs over [0, 2*pi) and |g'| = length / (2*pi).
class ArcLengthCurve final : public CurveSource {
 public:
  explicit ArcLengthCurve(std::shared_ptr<const CurveSource> base);
  int dimension() const override { return base_->dimension(); }
  CurvePoint evaluate(double sigma) const override;
  bool resolved_by(int node_count) const override { return base_->resolved_by(node_count); }
  double length() const { return length_; }
  const std::shared_ptr<const CurveSource>& base() const { return base_; }
  /// Base parameter t with S(t) = sigma * length / (2*pi).
  double base_parameter(double sigma) const;

 private:
  std::shared_ptr<const CurveSource> base_;
  TrigSeries speed_;
  Eigen::VectorXd table_t_;
  Eigen::VectorXd table_s_;
  double length_ = 0.0;
};

/// c * base(t).
class ScaledCurve final : public CurveSource {
 public:
  ScaledCurve(std::shared_ptr<const CurveSource> base, double factor);
  int dimension() const override { return base_->dimension(); }
  CurvePoint evaluate(double t) const override;
  bool resolved_by(int node_count) const override { return base_->resolved_by(node_count); }

 private:
  std::shared_ptr<const CurveSource> base_;
  double factor_;
};

/// Sampled closed curve: a parametrisation plus uniform nodes
/// t_j = 2*pi*j/m with positions and derivatives at every node.
class JordanCurve {
 public:
  /// Samples `source` at `node_count` nodes and validates regularity and
  /// injectivity on the samples.
  static JordanCurve build(std::shared_ptr<const CurveSource> source, int node_count);

  int dimension() const { return static_cast<int>(points_.rows()); }
  int node_count() const { return static_cast<int>(points_.cols()); }
  double node(int j) const { return kTwoPi * j / node_count(); }
  double spacing() const { return kTwoPi / node_count(); }
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::MatrixXd& first() const { return first_; }
  const Eigen::MatrixXd& second() const { return second_; }
  CurvePoint evaluate(double t) const { return source_->evaluate(t); }
  const CurveSource& source() const { return *source_; }
  const std::shared_ptr<const CurveSource>& source_ptr() const { return source_; }
  /// |d_j| constant within 1e-8 relative.
  bool is_arc_length() const { return arc_length_; }
  double min_speed() const;
  double max_speed() const;

  JordanCurve scaled(double factor) const;
  JordanCurve resampled(int node_count) const { return build(source_, node_count); }

 private:
  std::shared_ptr<const CurveSource> source_;
  Eigen::MatrixXd points_;
  Eigen::MatrixXd first_;
  Eigen::MatrixXd second_;
  bool arc_length_ = false;
};

struct CircleDescriptor {
  double radius = 1.0;
};
struct EllipseDescriptor {
  double a = 1.0;
  double b = 1.0;
};
struct FourierDescriptor {
  TrigSeries series;
};
/// Raw samples, one column per node, taken at t0 + 2*pi*j/m.
struct SampleDescriptor {
  Eigen::MatrixXd samples;
  double t0 = 0.0;
};
using CurveDescriptor =
    std::variant<CircleDescriptor, EllipseDescriptor, FourierDescriptor, SampleDescriptor>;

/// Parametrisation behind a descriptor (no node sampling, no validation).
std::shared_ptr<const CurveSource> make_source(const CurveDescriptor& descriptor);

/// Validated sampled curve; node_count >= 16.
JordanCurve build_curve(const CurveDescriptor& descriptor, int node_count);

/// Reads `t,x_1,...,x_n` rows (optional header line). Nodes must be uniform.
SampleDescriptor read_samples_csv(std::istream& in);

/// |a ^ b| = sqrt(|a|^2 |b|^2 - <a, b>^2), evaluated as the root of the sum
/// of squared 2x2 minors, which avoids the cancellation of the Gram form.
double wedge_norm(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Circle distance between two angles, in [0, pi].
double circle_distance(double s, double t);

}  // namespace qch
