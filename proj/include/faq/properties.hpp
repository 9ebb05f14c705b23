#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faq/fuzzy_set.hpp"
#include "faq/quantifier.hpp"
#include "faq/shape.hpp"

namespace faq {

/// Outcome of one property check. passed == (max_deviation <= tolerance).
struct PropertyReport {
  std::string id;
  std::size_t instances = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

using Evaluator = std::function<double(const SemiFuzzyQuantifier&, std::span<const FuzzySet>)>;

/// eval_dp with default limits.
Evaluator dp_evaluator();

/// F^A(Q) equals Q on every tuple of crisp arguments (exhaustive; m <= 8, n*m <= 18).
PropertyReport check_correct_generalization(const SemiFuzzyQuantifier& q, std::size_t m,
                                            const Evaluator& evaluate = dp_evaluator());

/// External negation, its involution, internal negation, and the dual on random inputs.
PropertyReport check_negations_and_dual(const SemiFuzzyQuantifier& q, std::size_t samples, std::size_t m,
                                        std::uint64_t seed);

/// F^A(identity)(X) equals the mean membership, m drawn uniformly from [1, max_m].
PropertyReport check_averaging_identity(std::size_t samples, std::size_t max_m, std::uint64_t seed);

/// The results of a quantified Ruspini partition sum to one.
PropertyReport check_ruspini(std::span<const SemiFuzzyQuantifier> partition, std::size_t samples, std::size_t m,
                             std::uint64_t seed);

/// Raising one criterion by `bump` strictly raises F^A(Q_h) for strictly increasing h.
///
/// arity 1 uses Q_h(Y) = h(|Y|/m); arity 2 uses Q_h(W, Y) = h(|W ∩ Y|/|W|) with
/// random weights W and only bumps criteria whose weight is positive. Entries
/// already at 1 are skipped. A strict increase means at least 1e-15.
PropertyReport check_fine_distinction(const MembershipShape& h, std::size_t arity, std::size_t samples,
                                      std::size_t m, std::uint64_t seed, double bump = 0.05);

/// Marginals of the joint combination tensor equal the unary recurrence on the combined sets.
PropertyReport check_projection_theorem(std::span<const BooleanCombination> combinations, std::size_t samples,
                                        std::size_t m, std::uint64_t seed);

/// F^A(transpose_args(Q,i,j)) on swapped inputs equals F^A(Q) on the originals.
PropertyReport check_transposition(const SemiFuzzyQuantifier& q, std::size_t i, std::size_t j, std::size_t samples,
                                   std::size_t m, std::uint64_t seed);

/// Spot check for a quantifier nondecreasing in `argument`: raising a membership never lowers F^A.
PropertyReport check_monotonicity(const SemiFuzzyQuantifier& q, std::size_t argument, std::size_t samples,
                                  std::size_t m, std::uint64_t seed);

/// var(|X|)/m^2 from the cardinality distribution equals Σ mu(1-mu)/m^2.
PropertyReport check_variance_decay(std::size_t samples, std::size_t max_m, std::uint64_t seed);

/// A reference value computed by a named reproduction scenario.
struct GoldenValue {
  std::string name;  // example1, example2_m50, example2_m100, example2_m500
  double expected = 0.0;
  double tolerance = 0.0;
};

std::vector<GoldenValue> default_goldens();
/// Value produced by the exact engine for a golden scenario name.
double golden_actual(std::string_view name);
PropertyReport check_golden(std::span<const GoldenValue> goldens);

struct SuiteOptions {
  std::optional<std::vector<SemiFuzzyQuantifier>> ruspini_partition;
  std::optional<std::vector<GoldenValue>> goldens;
};

/// generalization, negation, averaging, ruspini, transposition, fine_distinction,
/// projection, monotonicity, variance, golden.
std::span<const std::string_view> suite_names();

/// Runs the named suites (all of them when `suites` is empty) in a fixed order.
std::vector<PropertyReport> run_suites(std::span<const std::string> suites, std::uint64_t seed,
                                       const SuiteOptions& options = {});

}  // namespace faq
