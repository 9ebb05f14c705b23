#include "faq/shape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "faq/errors.hpp"

namespace faq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

double trapezoid(const Trapezoid& t, double x) {
  if (x <= t.a) return 0.0;
  if (x <= t.b) return (x - t.a) / (t.b - t.a);
  if (x <= t.c) return 1.0;
  if (x <= t.d) return 1.0 - (x - t.c) / (t.d - t.c);
  return 0.0;
}

double s_curve(const SShape& s, double x) {
  const double width = s.gamma - s.alpha;
  if (x <= s.alpha) return 0.0;
  if (x <= 0.5 * (s.alpha + s.gamma)) {
    const double r = (x - s.alpha) / width;
    return 2.0 * r * r;
  }
  if (x <= s.gamma) {
    const double r = (x - s.gamma) / width;
    return 1.0 - 2.0 * r * r;
  }
  return 1.0;
}

double piecewise(const PiecewiseLinear& p, double x) {
  const auto& pts = p.points;
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  const auto hi = std::upper_bound(pts.begin(), pts.end(), x,
                                   [](double v, const auto& pt) { return v < pt.first; });
  const auto lo = hi - 1;
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double tabulated(const Tabulated& t, double x) {
  const auto& v = t.values;
  if (x <= 0.0) return v.front();
  const double last = static_cast<double>(v.size() - 1);
  if (x >= last) return v.back();
  const double fl = std::floor(x);
  const auto k = static_cast<std::size_t>(fl);
  const double frac = x - fl;
  if (frac == 0.0) return v[k];
  return v[k] + frac * (v[k + 1] - v[k]);
}

double interval(const Interval& iv, double x) {
  const bool above = iv.lo_closed ? x >= iv.lo : x > iv.lo;
  const bool below = iv.hi_closed ? x <= iv.hi : x < iv.hi;
  return (above && below) ? 1.0 : 0.0;
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void validate(const MembershipShape& shape) {
  std::visit(
      Overloaded{
          [](const Trapezoid& t) {
            require(!std::isnan(t.a) && !std::isnan(t.b) && !std::isnan(t.c) && !std::isnan(t.d),
                    "trapezoid: NaN parameter");
            require(t.a <= t.b && t.b <= t.c && t.c <= t.d, "trapezoid: requires a <= b <= c <= d");
            require(std::isfinite(t.a) || (t.a == -kInf && t.b == -kInf),
                    "trapezoid: an infinite a requires a = b = -inf");
            require(std::isfinite(t.d) || (t.d == kInf && t.c == kInf),
                    "trapezoid: an infinite d requires c = d = +inf");
            require(std::isfinite(t.b) || t.b == -kInf || t.c == kInf,
                    "trapezoid: b = +inf leaves no plateau");
            require(std::isfinite(t.c) || t.c == kInf || t.b == -kInf,
                    "trapezoid: c = -inf leaves no plateau");
          },
          [](const SShape& s) {
            require(std::isfinite(s.alpha) && std::isfinite(s.gamma), "s-shape: parameters must be finite");
            require(s.alpha < s.gamma, "s-shape: requires alpha < gamma");
          },
          [](const PiecewiseLinear& p) {
            require(!p.points.empty(), "piecewise: needs at least one knot");
            for (std::size_t i = 0; i < p.points.size(); ++i) {
              const auto [x, y] = p.points[i];
              require(std::isfinite(x), "piecewise: knot x must be finite");
              require(in_unit(y), "piecewise: knot value outside [0,1]");
              if (i > 0) require(x > p.points[i - 1].first, "piecewise: knots must be strictly increasing");
            }
          },
          [](const Tabulated& t) {
            require(!t.values.empty(), "table: needs at least one value");
            for (double v : t.values) require(in_unit(v), "table: value outside [0,1]");
          },
          [](const Interval& iv) {
            require(!std::isnan(iv.lo) && !std::isnan(iv.hi), "interval: NaN bound");
            require(iv.lo <= iv.hi, "interval: requires lo <= hi");
          },
      },
      shape);
}

double eval_shape(const MembershipShape& shape, double x) {
  if (!std::isfinite(x)) throw InvalidArgument("eval_shape: x must be finite");
  const double v = std::visit(Overloaded{
                                  [x](const Trapezoid& t) { return trapezoid(t, x); },
                                  [x](const SShape& s) { return s_curve(s, x); },
                                  [x](const PiecewiseLinear& p) { return piecewise(p, x); },
                                  [x](const Tabulated& t) { return tabulated(t, x); },
                                  [x](const Interval& iv) { return interval(iv, x); },
                              },
                              shape);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace faq
