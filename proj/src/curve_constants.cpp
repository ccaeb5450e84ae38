#include "qch/curve_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qch/errors.hpp"
#include "qch/parallel.hpp"
#include "qch/quadrature.hpp"

namespace qch {

double curve_length(const JordanCurve& curve) {
  const Eigen::VectorXd speed = curve.first().colwise().norm().transpose();
  return pairwise_sum(speed.data(), static_cast<std::size_t>(speed.size())) * curve.spacing();
}

JordanCurve arc_length_reparametrize(const JordanCurve& curve) {
  if (curve.is_arc_length()) return curve;
  return JordanCurve::build(std::make_shared<ArcLengthCurve>(curve.source_ptr()), curve.node_count());
}

namespace {

struct Candidate {
  double value;
  double s;
  double t;
};

/// Coarse all-pairs scan followed by level-wise pattern search.
/// `pair(i, j)` scores coarse nodes, `diag(i)` is the coincident limit at
/// coarse node i, `eval(s, t)` scores an arbitrary pair.
template <class Pair, class Diag, class Eval>
SupEstimate sup_search(int m, const Pair& pair, const Diag& diag, const Eval& eval,
                       const SupOptions& opt) {
  const double h0 = kTwoPi / m;
  const int band = std::min(opt.band, m / 4);
  std::vector<Candidate> row_best(static_cast<std::size_t>(m), {-1.0, 0.0, 0.0});
  parallel_for_chunks(static_cast<std::size_t>(m), [&](std::size_t b, std::size_t e) {
    for (std::size_t ii = b; ii < e; ++ii) {
      const int i = static_cast<int>(ii);
      Candidate best{diag(i), i * h0, i * h0};
      for (int j = i + band; j < m && m - (j - i) >= band; ++j) {
        const double v = pair(i, j);
        if (v > best.value) best = {v, i * h0, j * h0};
      }
      row_best[ii] = best;
    }
  });
  std::vector<Candidate> sorted = row_best;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  std::vector<Candidate> picked;
  const double sep = band * h0;
  for (const auto& c : sorted) {
    if (static_cast<int>(picked.size()) >= opt.candidates) break;
    const bool close = std::any_of(picked.begin(), picked.end(), [&](const Candidate& p) {
      const bool same = circle_distance(p.s, c.s) < sep && circle_distance(p.t, c.t) < sep;
      const bool swapped = circle_distance(p.s, c.t) < sep && circle_distance(p.t, c.s) < sep;
      return same || swapped;
    });
    if (!close) picked.push_back(c);
  }

  SupEstimate out;
  out.value = sorted.front().value;
  out.s = sorted.front().s;
  out.t = sorted.front().t;
  double h = h0;
  double last_gain = 0.0;
  static constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  for (int level = 1; level <= opt.max_depth; ++level) {
    const double before = out.value;
    for (auto& c : picked) {
      for (int move = 0; move < 64; ++move) {
        Candidate step = c;
        for (const auto& d : kDirs) {
          const double s = c.s + d[0] * h;
          const double t = c.t + d[1] * h;
          const double v = eval(s, t);
          if (v > step.value) step = {v, s, t};
        }
        if (!(step.value > c.value)) break;
        c = step;
      }
      if (c.value > out.value) {
        out.value = c.value;
        out.s = c.s;
        out.t = c.t;
      }
    }
    last_gain = out.value - before;
    out.depth = level;
    h *= 0.5;
  }
  out.converged = out.depth > 0 && last_gain <= opt.tol;
  out.s = std::fmod(out.s, kTwoPi) + (out.s < 0 ? kTwoPi : 0.0);
  out.t = std::fmod(out.t, kTwoPi) + (out.t < 0 ? kTwoPi : 0.0);
  return out;
}

void require_arc_length(const JordanCurve& curve, const char* what) {
  if (!curve.is_arc_length())
    throw DomainError(std::string(what) + ": curve must be arc-length parametrised");
}

struct CoarseSamples {
  int m;
  Eigen::MatrixXd pos, d1, d2;
};

CoarseSamples coarse_samples(const JordanCurve& curve, int coarse_nodes) {
  CoarseSamples c;
  c.m = std::min(coarse_nodes, curve.node_count());
  const int n = curve.dimension();
  c.pos.resize(n, c.m);
  c.d1.resize(n, c.m);
  c.d2.resize(n, c.m);
  parallel_for_chunks(static_cast<std::size_t>(c.m), [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const CurvePoint p = curve.evaluate(kTwoPi * static_cast<double>(j) / c.m);
      c.pos.col(static_cast<Eigen::Index>(j)) = p.position;
      c.d1.col(static_cast<Eigen::Index>(j)) = p.first;
      c.d2.col(static_cast<Eigen::Index>(j)) = p.second;
    }
  });
  return c;
}

// Below this separation difference quotients lose more digits to the
// reparametrisation error than the derivative limit does.
constexpr double kDiagonal = 1e-4;

double curvature_at(const CurveSource& src, double t) {
  const CurvePoint p = src.evaluate(t);
  const double v = p.first.norm();
  return wedge_norm(p.first, p.second) / (v * v * v);
}

}  // namespace

SupEstimate chord_arc_constant(const JordanCurve& curve, const SupOptions& options) {
  require_arc_length(curve, "chord_arc_constant");
  const double c = curve_length(curve) / kTwoPi;
  const CoarseSamples cs = coarse_samples(curve, options.coarse_nodes);
  const double h = kTwoPi / cs.m;
  auto pair = [&](int i, int j) {
    return c * circle_distance(i * h, j * h) / (cs.pos.col(i) - cs.pos.col(j)).norm();
  };
  auto diag = [](int) { return 1.0; };
  auto eval = [&](double s, double t) {
    const double d = circle_distance(s, t);
    if (d < kDiagonal) return 1.0;
    return c * d / (curve.evaluate(s).position - curve.evaluate(t).position).norm();
  };
  return sup_search(cs.m, pair, diag, eval, options);
}

SupEstimate derivative_holder_sup(const JordanCurve& curve, double mu, const SupOptions& options) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("holder exponent mu must lie in (0, 1]");
  const CoarseSamples cs = coarse_samples(curve, options.coarse_nodes);
  const double h = kTwoPi / cs.m;
  const bool lipschitz = mu == 1.0;
  auto pair = [&](int i, int j) {
    return (cs.d1.col(i) - cs.d1.col(j)).norm() / std::pow(circle_distance(i * h, j * h), mu);
  };
  auto diag = [&](int i) { return lipschitz ? cs.d2.col(i).norm() : 0.0; };
  auto eval = [&](double s, double t) {
    const double d = circle_distance(s, t);
    if (d < kDiagonal) return lipschitz ? curve.evaluate(s).second.norm() : 0.0;
    return (curve.evaluate(s).first - curve.evaluate(t).first).norm() / std::pow(d, mu);
  };
  return sup_search(cs.m, pair, diag, eval, options);
}

SupEstimate holder_derivative_constant(const JordanCurve& curve, double mu, const SupOptions& options) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("holder_derivative_constant: mu must lie in (0, 1]");
  require_arc_length(curve, "holder_derivative_constant");
  const double length = curve_length(curve);
  SupEstimate est = derivative_holder_sup(curve, mu, options);
  est.value *= std::pow(kTwoPi / length, 1.0 + mu);
  if (mu == 1.0) {
    const double kappa = max_curvature(curve);
    if (kappa > est.value) {
      est.value = kappa;
      est.t = est.s;
    }
  }
  return est;
}

double max_curvature(const JordanCurve& curve) {
  const CurveSource* src = &curve.source();
  if (const auto* arc = dynamic_cast<const ArcLengthCurve*>(src)) src = arc->base().get();
  if (!src->resolved_by(curve.node_count()))
    throw RefinementRequired("max_curvature: derivative data not resolved by the node grid");
  const int m = std::max(curve.node_count(), 4096);
  const double h = kTwoPi / m;
  std::vector<double> kappa(static_cast<std::size_t>(m));
  parallel_for_chunks(kappa.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) kappa[j] = curvature_at(*src, h * static_cast<double>(j));
  });
  std::vector<int> peaks;
  for (int j = 0; j < m; ++j) {
    const double prev = kappa[static_cast<std::size_t>((j + m - 1) % m)];
    const double next = kappa[static_cast<std::size_t>((j + 1) % m)];
    if (kappa[static_cast<std::size_t>(j)] >= prev && kappa[static_cast<std::size_t>(j)] >= next) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return kappa[static_cast<std::size_t>(a)] > kappa[static_cast<std::size_t>(b)];
  });
  double best = *std::max_element(kappa.begin(), kappa.end());
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t k = 0; k < std::min<std::size_t>(peaks.size(), 8); ++k) {
    double a = h * (peaks[k] - 1);
    double b = h * (peaks[k] + 1);
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = curvature_at(*src, x1), f2 = curvature_at(*src, x2);
    for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = curvature_at(*src, x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = curvature_at(*src, x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

// ---------------------------------------------------------------------------

ModulusOfContinuity::ModulusOfContinuity(std::vector<double> delta, std::vector<double> omega)
    : delta_(std::move(delta)), omega_(std::move(omega)) {
  if (delta_.empty() || delta_.size() != omega_.size())
    throw DomainError("modulus table: abscissae and values must have equal nonzero length");
  if (delta_.front() < 0.0) throw DomainError("modulus table: negative step");
  if (delta_.front() > 0.0) {
    delta_.insert(delta_.begin(), 0.0);
    omega_.insert(omega_.begin(), 0.0);
  }
  if (omega_.front() != 0.0) throw DomainError("modulus table: omega(0) must be 0");
  for (std::size_t i = 1; i < delta_.size(); ++i) {
    if (!(delta_[i] > delta_[i - 1])) throw DomainError("modulus table: steps must increase");
    if (omega_[i] < omega_[i - 1]) throw DomainError("modulus table: omega must be nondecreasing");
  }
}

double ModulusOfContinuity::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= delta_.back()) return omega_.back();
  const auto it = std::upper_bound(delta_.begin(), delta_.end(), x);
  const auto i = static_cast<std::size_t>(it - delta_.begin());
  const double w = (x - delta_[i - 1]) / (delta_[i] - delta_[i - 1]);
  return omega_[i - 1] + w * (omega_[i] - omega_[i - 1]);
}

double ModulusOfContinuity::integral(double y) const {
  if (y <= 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < delta_.size(); ++i) {
    if (delta_[i - 1] >= y) return total;
    const double b = std::min(delta_[i], y);
    total += 0.5 * (b - delta_[i - 1]) * (omega_[i - 1] + (*this)(b));
  }
  if (y > delta_.back()) total += (y - delta_.back()) * omega_.back();
  return total;
}

ModulusOfContinuity dini_modulus_table(const JordanCurve& curve, std::vector<double> steps) {
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  if (!steps.empty() && steps.front() < 0.0) throw DomainError("dini_modulus_table: negative step");
  const int m = curve.node_count();
  const Eigen::MatrixXd& d = curve.first();
  std::vector<double> by_offset(static_cast<std::size_t>(m / 2 + 1), 0.0);
  parallel_for_chunks(by_offset.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      double best = 0.0;
      for (int j = 0; j < m; ++j)
        best = std::max(best, (d.col((j + static_cast<int>(k)) % m) - d.col(j)).norm());
      by_offset[k] = best;
    }
  });
  std::vector<double> delta, omega;
  double running = 0.0;
  for (double step : steps) {
    const double eff = std::min(step, std::numbers::pi);
    const auto kmax = static_cast<std::size_t>(std::floor(eff / curve.spacing() + 1e-9));
    for (std::size_t k = 0; k <= std::min(kmax, by_offset.size() - 1); ++k) running = std::max(running, by_offset[k]);
    if (eff > 0.0) {
      double exact = 0.0;
      for (int j = 0; j < m; ++j)
        exact = std::max(exact, (curve.evaluate(curve.node(j) + eff).first - d.col(j)).norm());
      running = std::max(running, exact);
    }
    delta.push_back(step);
    omega.push_back(step == 0.0 ? 0.0 : running);
  }
  if (delta.empty()) return ModulusOfContinuity({0.0}, {0.0});
  return ModulusOfContinuity(std::move(delta), std::move(omega));
}

CurveConstants compute_curve_constants(const JordanCurve& curve, double mu, const SupOptions& options) {
  const JordanCurve arc = arc_length_reparametrize(curve);
  CurveConstants c;
  c.mu = mu;
  c.length = curve_length(arc);
  c.chord_arc = chord_arc_constant(arc, options);
  c.holder = holder_derivative_constant(arc, mu, options);
  c.max_curvature = max_curvature(arc);
  c.refinement_depth = std::min(c.chord_arc.depth, c.holder.depth);
  return c;
}

double dini_lhs(const std::function<double(double)>& omega, double y, double a) {
  if (!(y > 0.0)) throw DomainError("dini_lhs: y must be positive");
  // The piece below 1e-150 is O(1e-150 * omega(1e-150)) and is dropped.
  auto inner = [&](double x) {
    if (x < 1e-150) return 0.0;
    return integrate_tanh_sinh([&](double t) { return omega(a * t); }, 0.0, x) / x / x;
  };
  return integrate_tanh_sinh(inner, 0.0, y);
}

double dini_rhs(const std::function<double(double)>& omega, double y, double a) {
  if (!(y > 0.0)) throw DomainError("dini_rhs: y must be positive");
  return integrate_tanh_sinh(
      [&](double x) {
        if (x < std::numeric_limits<double>::min()) return 0.0;
        return omega(a * x) / x - omega(a * x) / y;
      },
      0.0, y);
}

}  // namespace qch
