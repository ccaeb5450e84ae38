#pragma once

#include <cmath>

#include "qch/curve.hpp"

namespace qch::test {

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

inline JordanCurve circle(double r = 1.0, int nodes = 512) { return build_curve(CircleDescriptor{r}, nodes); }
inline JordanCurve ellipse(double a = 1.2, double b = 0.8, int nodes = 512) {
  return build_curve(EllipseDescriptor{a, b}, nodes);
}

/// Values frozen from tests/oracles/*.py.
namespace oracle {
inline constexpr double kEllipseLength = 6.3461758357162358885;
inline constexpr double kEllipseLambda = 1.9831799486613236051;  // L / (4b)
inline constexpr double kEllipseKappa = 1.875;                    // a / b^2
inline constexpr double kCircleHolderHalf = 1.2038366614925037045;
}  // namespace oracle

}  // namespace qch::test
