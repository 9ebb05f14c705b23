#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace faq {

/// Finite fuzzy set over an anonymous referential {e_1..e_m}; index i holds mu(e_{i+1}).
class FuzzySet {
 public:
  /// Rejects an empty vector and any degree outside [0,1] (NaN included).
  explicit FuzzySet(std::vector<double> memberships);
  FuzzySet(std::initializer_list<double> memberships);

  static FuzzySet constant(std::size_t m, double degree);

  std::size_t size() const noexcept { return mu_.size(); }
  double operator[](std::size_t i) const noexcept { return mu_[i]; }
  std::span<const double> memberships() const noexcept { return mu_; }

  bool is_crisp() const noexcept;
  /// Sum of membership degrees.
  double sigma_count() const noexcept;
  double mean() const noexcept { return sigma_count() / static_cast<double>(mu_.size()); }

  bool operator==(const FuzzySet&) const = default;

 private:
  std::vector<double> mu_;
};

class CrispSet {
 public:
  explicit CrispSet(std::vector<bool> members);
  /// Bit i of mask marks membership of e_{i+1}; requires m <= 64.
  static CrispSet from_mask(std::uint64_t mask, std::size_t m);

  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::size_t i) const noexcept { return members_[i]; }
  std::size_t cardinality() const noexcept;
  FuzzySet to_fuzzy() const;

  bool operator==(const CrispSet&) const = default;

 private:
  std::vector<bool> members_;
};

/// Boolean combination of n arguments as a truth table over the 2^n element atoms.
///
/// Atom index a encodes a membership pattern: bit i of a is set iff the element
/// belongs to argument Y_{i+1}. truth_table[a] is true iff elements with that
/// pattern belong to the combination.
class BooleanCombination {
 public:
  BooleanCombination(std::size_t arity, std::vector<bool> truth_table);

  /// The pure atom Y_1^(l_1) ∩ ... ∩ Y_n^(l_n); literals are 0/1.
  static BooleanCombination atom(std::span<const int> literals);
  static BooleanCombination atom(std::initializer_list<int> literals);
  /// The argument Y_{index+1} itself.
  static BooleanCombination argument(std::size_t arity, std::size_t index);
  static BooleanCombination tautology(std::size_t arity);
  /// Intersection of the listed arguments (0-based), e.g. {0, 1} for Y1 ∩ Y2.
  static BooleanCombination intersection_of(std::size_t arity, std::initializer_list<std::size_t> args);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t atom_count() const noexcept { return table_.size(); }
  bool contains_atom(std::size_t atom) const noexcept { return table_[atom]; }
  const std::vector<bool>& truth_table() const noexcept { return table_; }

  bool operator==(const BooleanCombination&) const = default;

 private:
  std::size_t arity_;
  std::vector<bool> table_;
};

/// Largest arity accepted by BooleanCombination (2^16 atoms).
inline constexpr std::size_t kMaxArity = 16;

/// Strong negation 1 - mu.
FuzzySet complement(const FuzzySet& x);
/// Product t-norm.
FuzzySet intersect(const FuzzySet& x1, const FuzzySet& x2);
/// Probabilistic sum x + y - xy.
FuzzySet unite(const FuzzySet& x1, const FuzzySet& x2);

/// Per-element probability of falling in the combination when every X_i is
/// sampled independently element by element.
FuzzySet combine(const BooleanCombination& combination, std::span<const FuzzySet> sets);

/// m_X(Y): probability that Y is the crisp representative of X.
double representative_probability(const FuzzySet& x, const CrispSet& y);

/// Bandler-Kohout equipotence of a crisp and a fuzzy set with the product t-norm
/// and the Lukasiewicz implication. Coincides with representative_probability.
double equipotence(const CrispSet& y, const FuzzySet& x);

}  // namespace faq
