#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "faq/fuzzy_set.hpp"
#include "faq/quantifier.hpp"

namespace faq {

/// Budgets for exact evaluation. Exceeding one throws BudgetExceeded.
struct EngineLimits {
  /// Brute-force enumeration visits 2^(n*m) subset tuples.
  std::size_t oracle_max_bits = 24;
  /// Bytes allowed for a dense cardinality tensor and its scratch copy.
  std::size_t tensor_memory_cap = std::size_t{2} << 30;

  /// Defaults, with the memory cap overridden by FA_QUANT_MEM_CAP (bytes) when set.
  static EngineLimits from_environment();
};

/// Pr(|Y| = j) for j = 0..m when Y is a random representative of X
/// (the Poisson-binomial law with success probabilities mu_X).
class CardinalityDistribution {
 public:
  explicit CardinalityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::size_t size() const noexcept { return probs_.size(); }
  std::size_t max_cardinality() const noexcept { return probs_.size() - 1; }
  double operator[](std::size_t j) const noexcept { return probs_[j]; }
  std::span<const double> probs() const noexcept { return probs_; }

  double total_mass() const noexcept;
  double mean() const noexcept;
  /// Central second moment, accumulated around the mean.
  double variance() const noexcept;

 private:
  std::vector<double> probs_;
};

/// Dense joint distribution f(i_1..i_K) over {0..m}^K, row-major (last axis fastest).
class CardinalityTensor {
 public:
  CardinalityTensor(std::size_t dims, std::size_t extent, std::vector<double> probs);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t extent() const noexcept { return extent_; }
  std::span<const double> probs() const noexcept { return probs_; }

  double at(std::span<const std::size_t> index) const;
  double at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  double total_mass() const noexcept;
  std::vector<double> marginal(std::size_t axis) const;

 private:
  std::size_t dims_;
  std::size_t extent_;
  std::vector<double> probs_;
};

/// F^A(Q)(X_1..X_n) by enumerating every tuple of crisp representatives.
double oracle_eval(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const EngineLimits& limits = {});

/// Incremental element-by-element recurrence, O(m^2).
CardinalityDistribution cardinality_distribution(const FuzzySet& x);

/// Σ_j Pr(|Φ| = j) q(j) for a quantifier with a single combination.
double eval_unary(const SemiFuzzyQuantifier& q, const FuzzySet& x);

/// Joint law of (|Y1|, |Y1 ∩ Y2|); entries with the second index above the first are zero. O(m^3).
CardinalityTensor joint_cardinality(const FuzzySet& x1, const FuzzySet& x2);

/// True when Q is binary and every combination lies inside its first argument,
/// so that Q(Y1,Y2) depends only on |Y1| and |Y1 ∩ Y2|.
bool is_conservative(const SemiFuzzyQuantifier& q) noexcept;

/// Conservative binary quantifiers through joint_cardinality.
double eval_binary_conservative(const SemiFuzzyQuantifier& q, const FuzzySet& x1, const FuzzySet& x2);

/// Joint law of (|Φ_1|..|Φ_K|) built one element at a time, O(m * 2^n * (m+1)^K).
CardinalityTensor joint_combination_tensor(std::span<const BooleanCombination> combinations,
                                           std::span<const FuzzySet> sets, const EngineLimits& limits = {});

/// Σ q(i) f(i) over the joint combination tensor.
double eval_general(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const EngineLimits& limits = {});

/// Exact evaluation through the cheapest applicable dynamic program:
/// a single combination uses the unary recurrence, conservative binary quantifiers
/// the two-dimensional kernel, everything else the general tensor.
double eval_dp(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const EngineLimits& limits = {});

/// Throws InvalidArgument unless there are `arity` sets of one common length compatible with q.
std::size_t require_arguments(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets);

}  // namespace faq
