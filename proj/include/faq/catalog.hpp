#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faq/quantifier.hpp"
#include "faq/shape.hpp"

namespace faq {

/// Parameters for standard_catalog. Which fields matter depends on the name:
///
///   exists                      unary, |Y| >= 1
///   all, some, no               binary set-theoretic quantifiers
///   at_least_k, exactly_k       values = {k}; arity 1 counts |Y|, arity 2 counts |Y1 ∩ Y2|
///   between                     values = {lo, hi}; lo <= count <= hi
///   about_k                     shape over the count (e.g. T_{6,8,12,14} for about_10)
///   unary_prop, binary_prop     shape over |Y|/m or |Y1∩Y2|/|Y1|
///   nearly_all                  binary, max(2|Y1∩Y2|/|Y1| - 1, 0)
///   identity                    unary, |Y|/m
struct CatalogParams {
  std::size_t arity = 0;  // 0 picks the name's default
  std::vector<double> values;
  std::optional<MembershipShape> shape;
  double empty_restrictor_value = 1.0;
};

SemiFuzzyQuantifier standard_catalog(std::string_view name, const CatalogParams& params = {});

std::span<const std::string_view> catalog_names();

/// Canonical combinations of binary proportional quantifiers: Φ1 = Y1∩Y2, Φ2 = Y1∩¬Y2.
std::vector<BooleanCombination> proportional_combinations();

/// Proportional quantifiers whose values sum to 1 on every cardinality tuple.
///
/// arity 1 yields shape_r(|Y|/m); arity 2 yields shape_r(|Y1∩Y2|/|Y1|) with the
/// empty restrictor mapped to shape_r(1), so the partition also holds for Y1 = ∅.
/// Throws InvalidArgument unless the shapes sum to 1 within 1e-9 on a dense grid of [0,1].
std::vector<SemiFuzzyQuantifier> ruspini_partition(std::span<const MembershipShape> shapes,
                                                   std::size_t arity = 1);

}  // namespace faq
