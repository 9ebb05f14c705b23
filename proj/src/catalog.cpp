#include "faq/catalog.hpp"

#include <array>
#include <cmath>
#include <string>

#include "faq/errors.hpp"

namespace faq {

namespace {

constexpr std::array<std::string_view, 12> kNames = {
    "exists",     "all",        "some",    "no",      "at_least_k", "exactly_k",
    "about_k",    "unary_prop", "binary_prop", "nearly_all", "identity", "between"};

// Grid used to check that partition shapes sum to one.
constexpr std::size_t kRuspiniGridPoints = 100001;
constexpr double kRuspiniTolerance = 1e-9;

[[noreturn]] void fail(std::string_view name, const std::string& msg) {
  throw InvalidArgument("catalog '" + std::string(name) + "': " + msg);
}

std::size_t pick_arity(std::string_view name, const CatalogParams& p, std::size_t fallback, bool binary_allowed,
                       bool unary_allowed) {
  const std::size_t arity = p.arity == 0 ? fallback : p.arity;
  if ((arity == 1 && !unary_allowed) || (arity == 2 && !binary_allowed) || arity < 1 || arity > 2) {
    fail(name, "unsupported arity " + std::to_string(arity));
  }
  return arity;
}

double require_value(std::string_view name, const CatalogParams& p, std::size_t index) {
  if (p.values.size() <= index) fail(name, "missing numeric parameter #" + std::to_string(index + 1));
  const double v = p.values[index];
  if (!std::isfinite(v) || v < 0.0) fail(name, "numeric parameters must be finite and non-negative");
  return v;
}

const MembershipShape& require_shape(std::string_view name, const CatalogParams& p) {
  if (!p.shape) fail(name, "a shape is required");
  return *p.shape;
}

// Φ for count-based quantifiers: Y itself (unary) or Y1 ∩ Y2 (binary).
BooleanCombination counted_set(std::size_t arity) {
  return arity == 1 ? BooleanCombination::argument(1, 0) : BooleanCombination::atom({1, 1});
}

SemiFuzzyQuantifier count_quantifier(std::size_t arity, MembershipShape shape) {
  return SemiFuzzyQuantifier(arity, {counted_set(arity)}, CountForm{std::move(shape), 0});
}

SemiFuzzyQuantifier binary_proportional(MembershipShape shape, double empty_value) {
  return SemiFuzzyQuantifier(2, proportional_combinations(), RatioForm{std::move(shape), 0, 1, empty_value});
}

}  // namespace

std::span<const std::string_view> catalog_names() { return kNames; }

std::vector<BooleanCombination> proportional_combinations() {
  return {BooleanCombination::atom({1, 1}), BooleanCombination::atom({1, 0})};
}

SemiFuzzyQuantifier standard_catalog(std::string_view name, const CatalogParams& p) {
  if (name == "exists") {
    const auto arity = pick_arity(name, p, 1, true, true);
    return count_quantifier(arity, Interval{1.0, kInf});
  }
  if (name == "all") {
    pick_arity(name, p, 2, true, false);
    return SemiFuzzyQuantifier(2, {BooleanCombination::atom({1, 0})}, CountForm{Interval{0.0, 0.0}, 0});
  }
  if (name == "some") {
    pick_arity(name, p, 2, true, false);
    return count_quantifier(2, Interval{1.0, kInf});
  }
  if (name == "no") {
    pick_arity(name, p, 2, true, false);
    return count_quantifier(2, Interval{0.0, 0.0});
  }
  if (name == "at_least_k") {
    const auto arity = pick_arity(name, p, 1, true, true);
    return count_quantifier(arity, Interval{require_value(name, p, 0), kInf});
  }
  if (name == "exactly_k") {
    const auto arity = pick_arity(name, p, 1, true, true);
    const double k = require_value(name, p, 0);
    return count_quantifier(arity, Interval{k, k});
  }
  if (name == "between") {
    const auto arity = pick_arity(name, p, 1, true, true);
    const double lo = require_value(name, p, 0);
    const double hi = require_value(name, p, 1);
    if (lo > hi) fail(name, "requires lo <= hi");
    return count_quantifier(arity, Interval{lo, hi});
  }
  if (name == "about_k") {
    const auto arity = pick_arity(name, p, 1, true, true);
    return count_quantifier(arity, require_shape(name, p));
  }
  if (name == "unary_prop") {
    pick_arity(name, p, 1, false, true);
    return SemiFuzzyQuantifier(1, {BooleanCombination::argument(1, 0)}, ProportionForm{require_shape(name, p), 0});
  }
  if (name == "binary_prop") {
    pick_arity(name, p, 2, true, false);
    return binary_proportional(require_shape(name, p), p.empty_restrictor_value);
  }
  if (name == "nearly_all") {
    pick_arity(name, p, 2, true, false);
    return binary_proportional(Trapezoid{0.5, 1.0, kInf, kInf}, p.empty_restrictor_value);
  }
  if (name == "identity") {
    pick_arity(name, p, 1, false, true);
    return SemiFuzzyQuantifier(1, {BooleanCombination::argument(1, 0)},
                               ProportionForm{Trapezoid{0.0, 1.0, kInf, kInf}, 0});
  }
  throw InvalidArgument("catalog: unknown quantifier '" + std::string(name) + "'");
}

std::vector<SemiFuzzyQuantifier> ruspini_partition(std::span<const MembershipShape> shapes, std::size_t arity) {
  if (shapes.empty()) throw InvalidArgument("ruspini partition: no shapes");
  if (arity != 1 && arity != 2) throw InvalidArgument("ruspini partition: arity must be 1 or 2");
  for (const auto& s : shapes) validate(s);

  for (std::size_t g = 0; g < kRuspiniGridPoints; ++g) {
    const double x = static_cast<double>(g) / static_cast<double>(kRuspiniGridPoints - 1);
    double sum = 0.0;
    for (const auto& s : shapes) sum += eval_shape(s, x);
    if (std::abs(sum - 1.0) > kRuspiniTolerance) {
      throw InvalidArgument("ruspini partition: shapes sum to " + std::to_string(sum) + " at x = " +
                            std::to_string(x) + " instead of 1");
    }
  }

  std::vector<SemiFuzzyQuantifier> out;
  out.reserve(shapes.size());
  for (const auto& s : shapes) {
    if (arity == 1) {
      out.emplace_back(1, std::vector{BooleanCombination::argument(1, 0)}, ProportionForm{s, 0});
    } else {
      out.push_back(binary_proportional(s, eval_shape(s, 1.0)));
    }
  }
  return out;
}

}  // namespace faq
