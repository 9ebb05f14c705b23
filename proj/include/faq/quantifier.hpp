#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "faq/fuzzy_set.hpp"
#include "faq/shape.hpp"

namespace faq {

/// q(i) = shape(i_axis): absolute quantifiers over one cardinality.
struct CountForm {
  MembershipShape shape;
  std::size_t axis = 0;
  bool operator==(const CountForm&) const = default;
};

/// q(i) = shape(i_axis / m): unary proportional quantifiers.
struct ProportionForm {
  MembershipShape shape;
  std::size_t axis = 0;
  bool operator==(const ProportionForm&) const = default;
};

/// q(i) = shape(i_num / (i_num + i_rest)), or empty_value when both are zero.
///
/// With Φ_num = Y1∩Y2 and Φ_rest = Y1∩¬Y2 this is the binary proportional
/// quantifier shape(|Y1∩Y2| / |Y1|) whose restrictor Y1 may be empty.
struct RatioForm {
  MembershipShape shape;
  std::size_t numerator_axis = 0;
  std::size_t rest_axis = 1;
  double empty_value = 1.0;
  bool operator==(const RatioForm&) const = default;
};

/// Dense row-major tensor of q over {0..extent-1}^K; only valid for m = extent - 1.
struct TableForm {
  std::size_t extent = 0;
  std::vector<double> values;
  bool operator==(const TableForm&) const = default;
};

using CardinalityFunction = std::variant<CountForm, ProportionForm, RatioForm, TableForm>;

enum class QuantifierKind { absolute, proportional };

/// Quantitative semi-fuzzy quantifier Q(Y_1..Y_n) = q(|Φ_1|, ..., |Φ_K|).
///
/// Values are immutable after construction. An externally negated quantifier
/// keeps q and reports 1 - q.
class SemiFuzzyQuantifier {
 public:
  SemiFuzzyQuantifier(std::size_t arity, std::vector<BooleanCombination> combinations,
                      CardinalityFunction q, bool negated = false);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t num_combinations() const noexcept { return combinations_.size(); }
  const std::vector<BooleanCombination>& combinations() const noexcept { return combinations_; }
  const CardinalityFunction& cardinality_function() const noexcept { return q_; }
  bool negated() const noexcept { return negated_; }
  QuantifierKind kind() const noexcept;

  /// q(i_1..i_K) for a referential of size m. Throws InvalidArgument when an
  /// index exceeds m or a table does not match m.
  double apply(std::span<const std::size_t> cards, std::size_t m) const;

  /// True when q' on proportions is defined (proportion and ratio forms).
  bool has_normalized_form() const noexcept;
  /// q'(p_1..p_K) on proportions in [0,1]; throws InvalidArgument when undefined.
  double apply_normalized(std::span<const double> proportions) const;

  /// Q(Y_1..Y_n) straight from set membership.
  double evaluate_crisp(std::span<const CrispSet> sets) const;

  /// Throws InvalidArgument when q cannot be evaluated for referentials of size m.
  void require_compatible(std::size_t m) const;

  bool operator==(const SemiFuzzyQuantifier&) const = default;

 private:
  double raw(std::span<const std::size_t> cards, std::size_t m) const;

  std::size_t arity_;
  std::vector<BooleanCombination> combinations_;
  CardinalityFunction q_;
  bool negated_;
};

/// Free-function spelling of SemiFuzzyQuantifier::apply.
double apply_q(const SemiFuzzyQuantifier& q, std::span<const std::size_t> cards, std::size_t m);

/// Cardinalities |Φ_1(Y)|..|Φ_K(Y)| of crisp arguments.
std::vector<std::size_t> combination_cardinalities(const std::vector<BooleanCombination>& combinations,
                                                   std::span<const CrispSet> sets);

/// 1 - Q.
SemiFuzzyQuantifier negate_external(const SemiFuzzyQuantifier& q);
/// Q(Y_1, ..., ¬Y_n).
SemiFuzzyQuantifier negate_internal(const SemiFuzzyQuantifier& q);
/// 1 - Q(Y_1, ..., ¬Y_n).
SemiFuzzyQuantifier dual(const SemiFuzzyQuantifier& q);
/// Q with arguments i and j (0-based) exchanged.
SemiFuzzyQuantifier transpose_args(const SemiFuzzyQuantifier& q, std::size_t i, std::size_t j);

}  // namespace faq
