#pragma once

#include <limits>
#include <utility>
#include <variant>
#include <vector>

namespace faq {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Trapezoidal fuzzy number T_{a,b,c,d}.
///
/// One-sided ramps use infinite corners: a = b = -inf drops the rising ramp and
/// c = d = +inf drops the falling one, e.g. {0.5, 0.6, kInf, kInf}.
struct Trapezoid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  bool operator==(const Trapezoid&) const = default;
};

/// Quadratic S-curve S_{alpha,gamma}; equals 1/2 at (alpha+gamma)/2.
struct SShape {
  double alpha = 0.0;
  double gamma = 1.0;
  bool operator==(const SShape&) const = default;
};

/// Linear interpolation between knots with strictly increasing x; constant beyond the ends.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> points;
  bool operator==(const PiecewiseLinear&) const = default;
};

/// values[k] at x = k, linear in between, clamped to the first/last value outside [0, size-1].
struct Tabulated {
  std::vector<double> values;
  bool operator==(const Tabulated&) const = default;
};

/// Crisp 0/1 indicator of an interval; infinite bounds allowed.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_closed = true;
  bool hi_closed = true;
  bool operator==(const Interval&) const = default;
};

using MembershipShape = std::variant<Trapezoid, SShape, PiecewiseLinear, Tabulated, Interval>;

/// Throws InvalidArgument on malformed parameters.
void validate(const MembershipShape& shape);

/// Value of the shape at a finite x, always in [0,1]. Does not re-validate.
double eval_shape(const MembershipShape& shape, double x);

}  // namespace faq
