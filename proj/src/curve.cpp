#include "qch/curve.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qch/errors.hpp"

namespace qch {

double circle_distance(double s, double t) {
  double d = std::fmod(std::abs(s - t), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double wedge_norm(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      const double m = a(i) * b(j) - a(j) * b(i);
      s += m * m;
    }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

TrigCurve::TrigCurve(TrigSeries series, bool from_samples)
    : series_(std::move(series)), from_samples_(from_samples) {}

CurvePoint TrigCurve::evaluate(double t) const {
  const auto e = series_.evaluate(t, 2);
  return {t, e.col(0), e.col(1), e.col(2)};
}

bool TrigCurve::resolved_by(int node_count) const {
  if (from_samples_) return series_.tail_ratio() < 1e-6;
  return node_count > 2 * series_.max_frequency();
}

// ---------------------------------------------------------------------------

ArcLengthCurve::ArcLengthCurve(std::shared_ptr<const CurveSource> base) : base_(std::move(base)) {
  int n = 256;
  for (;;) {
    Eigen::MatrixXd speed(1, n);
    for (int j = 0; j < n; ++j) speed(0, j) = base_->evaluate(kTwoPi * j / n).first.norm();
    speed_ = TrigSeries::interpolate(speed);
    if (speed_.tail_ratio() < 1e-13 || n >= (1 << 16)) break;
    n *= 2;
  }
  if (speed_.tail_ratio() > 1e-8)
    throw RefinementRequired("arc-length reparametrisation: speed not resolved by 65536 modes");
  speed_ = speed_.truncated(1e-18);
  length_ = kTwoPi * speed_.cos_coeffs()(0, 0);

  const int table = std::min(n, 4096);
  table_t_.resize(table + 1);
  table_s_.resize(table + 1);
  for (int j = 0; j <= table; ++j) {
    table_t_(j) = kTwoPi * j / table;
    table_s_(j) = j == table ? length_ : speed_.antiderivative(table_t_(j));
    if (j > 0 && !(table_s_(j) > table_s_(j - 1)))
      throw RefinementRequired("arc-length reparametrisation: cumulative length not monotone");
  }
}

double ArcLengthCurve::base_parameter(double sigma) const {
  const double turns = std::floor(sigma / kTwoPi);
  const double r = sigma - turns * kTwoPi;
  const double target = r * length_ / kTwoPi;
  const auto* begin = table_s_.data();
  const auto* end = begin + table_s_.size();
  auto it = std::upper_bound(begin, end, target);
  auto hi = std::clamp<std::ptrdiff_t>(it - begin, 1, table_s_.size() - 1);
  double lo_t = table_t_(hi - 1);
  double hi_t = table_t_(hi);
  const double s0 = table_s_(hi - 1);
  const double s1 = table_s_(hi);
  double t = lo_t + (hi_t - lo_t) * (target - s0) / (s1 - s0);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = speed_.antiderivative(t) - target;
    if (f > 0.0) hi_t = t; else lo_t = t;
    const double slope = base_->evaluate(t).first.norm();
    double next = t - f / slope;
    if (!(next > lo_t && next < hi_t)) next = 0.5 * (lo_t + hi_t);
    const double step = std::abs(next - t);
    t = next;
    if (step < 1e-15 * kTwoPi) break;
  }
  return t + turns * kTwoPi;
}

CurvePoint ArcLengthCurve::evaluate(double sigma) const {
  const double t = base_parameter(sigma);
  const CurvePoint p = base_->evaluate(t);
  const double c = length_ / kTwoPi;
  const double sp = p.first.norm();
  const double dphi = c / sp;
  const double ddphi = -c * c * p.first.dot(p.second) / (sp * sp * sp * sp);
  CurvePoint out;
  out.t = sigma;
  out.position = p.position;
  out.first = p.first * dphi;
  out.second = p.second * (dphi * dphi) + p.first * ddphi;
  return out;
}

// ---------------------------------------------------------------------------

ScaledCurve::ScaledCurve(std::shared_ptr<const CurveSource> base, double factor)
    : base_(std::move(base)), factor_(factor) {}

CurvePoint ScaledCurve::evaluate(double t) const {
  CurvePoint p = base_->evaluate(t);
  p.position *= factor_;
  p.first *= factor_;
  p.second *= factor_;
  return p;
}

// ---------------------------------------------------------------------------

namespace {

double orientation(const Eigen::MatrixXd& p, int a, int b, int c) {
  return (p(0, b) - p(0, a)) * (p(1, c) - p(1, a)) - (p(1, b) - p(1, a)) * (p(0, c) - p(0, a));
}

bool segments_cross(const Eigen::MatrixXd& p, int a, int b, int c, int d) {
  const double o1 = orientation(p, a, b, c);
  const double o2 = orientation(p, a, b, d);
  const double o3 = orientation(p, c, d, a);
  const double o4 = orientation(p, c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

// Sweep over segments sorted by their extent in the first coordinate.
void check_injective(const Eigen::MatrixXd& p) {
  const int m = static_cast<int>(p.cols());
  const int n = static_cast<int>(p.rows());
  const double diam = (p.rowwise().maxCoeff() - p.rowwise().minCoeff()).norm();
  const double eps = 1e-12 * std::max(diam, 1e-300);
  std::vector<double> lo(m), hi(m);
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    lo[i] = std::min(p(0, i), p(0, j)) - eps;
    hi[i] = std::max(p(0, i), p(0, j)) + eps;
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lo[a] < lo[b]; });
  for (int oi = 0; oi < m; ++oi) {
    const int i = order[oi];
    for (int oj = oi + 1; oj < m && lo[order[oj]] <= hi[i]; ++oj) {
      const int j = order[oj];
      const int gap = std::abs(i - j);
      if (std::min(gap, m - gap) < 2) continue;
      if ((p.col(i) - p.col(j)).norm() <= eps)
        throw InjectivityError("curve samples " + std::to_string(i) + " and " + std::to_string(j) +
                               " coincide");
      if (n == 2 && segments_cross(p, i, (i + 1) % m, j, (j + 1) % m))
        throw InjectivityError("curve segments " + std::to_string(i) + " and " + std::to_string(j) +
                               " cross");
    }
  }
}

}  // namespace

JordanCurve JordanCurve::build(std::shared_ptr<const CurveSource> source, int node_count) {
  if (node_count < 16) throw DomainError("build_curve: node_count must be at least 16");
  JordanCurve c;
  const int n = source->dimension();
  if (n < 2) throw DomainError("build_curve: dimension must be at least 2");
  c.points_.resize(n, node_count);
  c.first_.resize(n, node_count);
  c.second_.resize(n, node_count);
  for (int j = 0; j < node_count; ++j) {
    const CurvePoint p = source->evaluate(kTwoPi * j / node_count);
    c.points_.col(j) = p.position;
    c.first_.col(j) = p.first;
    c.second_.col(j) = p.second;
  }
  c.source_ = std::move(source);
  const Eigen::VectorXd speeds = c.first_.colwise().norm();
  const double vmax = speeds.maxCoeff();
  const double vmin = speeds.minCoeff();
  if (!(vmax > 0.0) || vmin <= 1e-10 * vmax)
    throw RegularityError("build_curve: derivative vanishes (|d_j| = " + std::to_string(vmin) + ")");
  check_injective(c.points_);
  c.arc_length_ = (vmax - vmin) <= 1e-8 * vmax;
  return c;
}

double JordanCurve::min_speed() const { return first_.colwise().norm().minCoeff(); }
double JordanCurve::max_speed() const { return first_.colwise().norm().maxCoeff(); }

JordanCurve JordanCurve::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("JordanCurve::scaled: factor must be positive");
  return build(std::make_shared<ScaledCurve>(source_, factor), node_count());
}

// ---------------------------------------------------------------------------

std::shared_ptr<const CurveSource> make_source(const CurveDescriptor& descriptor) {
  struct Visitor {
    std::shared_ptr<const CurveSource> operator()(const CircleDescriptor& d) const {
      if (!(d.radius > 0.0)) throw DomainError("circle radius must be positive");
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2), b = Eigen::MatrixXd::Zero(2, 2);
      a(0, 1) = d.radius;
      b(1, 1) = d.radius;
      return std::make_shared<TrigCurve>(TrigSeries(a, b));
    }
    std::shared_ptr<const CurveSource> operator()(const EllipseDescriptor& d) const {
      if (!(d.a > 0.0 && d.b > 0.0)) throw DomainError("ellipse semi-axes must be positive");
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2), b = Eigen::MatrixXd::Zero(2, 2);
      a(0, 1) = d.a;
      b(1, 1) = d.b;
      return std::make_shared<TrigCurve>(TrigSeries(a, b));
    }
    std::shared_ptr<const CurveSource> operator()(const FourierDescriptor& d) const {
      return std::make_shared<TrigCurve>(d.series);
    }
    std::shared_ptr<const CurveSource> operator()(const SampleDescriptor& d) const {
      if (d.samples.cols() < 16) throw DomainError("raw samples: need at least 16 nodes");
      return std::make_shared<TrigCurve>(TrigSeries::interpolate(d.samples, d.t0), true);
    }
  };
  return std::visit(Visitor{}, descriptor);
}

JordanCurve build_curve(const CurveDescriptor& descriptor, int node_count) {
  return JordanCurve::build(make_source(descriptor), node_count);
}

SampleDescriptor read_samples_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw DomainError("samples csv: non-numeric row '" + line + "'");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw DomainError("samples csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 16) throw DomainError("samples csv: need at least 16 rows");
  const auto cols = rows.front().size();
  if (cols < 3) throw DomainError("samples csv: need columns t, x_1, x_2[, ...]");
  const auto m = static_cast<Eigen::Index>(rows.size());
  const double t0 = rows.front()[0];
  const double dt = kTwoPi / static_cast<double>(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(rows[j][0] - (t0 + dt * static_cast<double>(j))) > 1e-9 * kTwoPi)
      throw DomainError("samples csv: nodes must be uniform with period 2*pi");
  }
  SampleDescriptor d;
  d.t0 = t0;
  d.samples.resize(static_cast<Eigen::Index>(cols - 1), m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (std::size_t i = 1; i < cols; ++i) d.samples(static_cast<Eigen::Index>(i - 1), j) = rows[j][i];
  return d;
}

}  // namespace qch
