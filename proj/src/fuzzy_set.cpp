#include "faq/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "faq/errors.hpp"

namespace faq {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  }
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

FuzzySet::FuzzySet(std::vector<double> memberships) : mu_(std::move(memberships)) {
  if (mu_.empty()) {
    throw InvalidArgument("fuzzy set: the referential must not be empty");
  }
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    const double d = mu_[i];
    if (!(d >= 0.0 && d <= 1.0)) {
      throw InvalidArgument("fuzzy set: degree at index " + std::to_string(i) + " is outside [0,1]");
    }
  }
}

FuzzySet::FuzzySet(std::initializer_list<double> memberships)
    : FuzzySet(std::vector<double>(memberships)) {}

FuzzySet FuzzySet::constant(std::size_t m, double degree) {
  return FuzzySet(std::vector<double>(m, degree));
}

bool FuzzySet::is_crisp() const noexcept {
  return std::all_of(mu_.begin(), mu_.end(), [](double d) { return d == 0.0 || d == 1.0; });
}

double FuzzySet::sigma_count() const noexcept {
  double s = 0.0;
  for (double d : mu_) s += d;
  return s;
}

CrispSet::CrispSet(std::vector<bool> members) : members_(std::move(members)) {}

CrispSet CrispSet::from_mask(std::uint64_t mask, std::size_t m) {
  if (m > 64) throw InvalidArgument("crisp set: masks cover at most 64 elements");
  std::vector<bool> bits(m);
  for (std::size_t i = 0; i < m; ++i) bits[i] = ((mask >> i) & 1U) != 0;
  return CrispSet(std::move(bits));
}

std::size_t CrispSet::cardinality() const noexcept {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

FuzzySet CrispSet::to_fuzzy() const {
  std::vector<double> mu(members_.size());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = members_[i] ? 1.0 : 0.0;
  return FuzzySet(std::move(mu));
}

BooleanCombination::BooleanCombination(std::size_t arity, std::vector<bool> truth_table)
    : arity_(arity), table_(std::move(truth_table)) {
  if (arity_ < 1 || arity_ > kMaxArity) {
    throw InvalidArgument("boolean combination: arity must be in [1," + std::to_string(kMaxArity) + "]");
  }
  if (table_.size() != (std::size_t{1} << arity_)) {
    throw InvalidArgument("boolean combination: truth table must have 2^" + std::to_string(arity_) +
                          " entries, got " + std::to_string(table_.size()));
  }
}

BooleanCombination BooleanCombination::atom(std::span<const int> literals) {
  const std::size_t n = literals.size();
  if (n < 1 || n > kMaxArity) throw InvalidArgument("boolean combination: bad atom arity");
  std::size_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (literals[i] != 0 && literals[i] != 1) {
      throw InvalidArgument("boolean combination: atom literals must be 0 or 1");
    }
    if (literals[i] == 1) index |= std::size_t{1} << i;
  }
  std::vector<bool> table(std::size_t{1} << n, false);
  table[index] = true;
  return BooleanCombination(n, std::move(table));
}

BooleanCombination BooleanCombination::atom(std::initializer_list<int> literals) {
  return atom(std::span<const int>(literals.begin(), literals.size()));
}

BooleanCombination BooleanCombination::argument(std::size_t arity, std::size_t index) {
  if (index >= arity) throw InvalidArgument("boolean combination: argument index out of range");
  if (arity < 1 || arity > kMaxArity) throw InvalidArgument("boolean combination: bad arity");
  std::vector<bool> table(std::size_t{1} << arity);
  for (std::size_t a = 0; a < table.size(); ++a) table[a] = ((a >> index) & 1U) != 0;
  return BooleanCombination(arity, std::move(table));
}

BooleanCombination BooleanCombination::tautology(std::size_t arity) {
  if (arity < 1 || arity > kMaxArity) throw InvalidArgument("boolean combination: bad arity");
  return BooleanCombination(arity, std::vector<bool>(std::size_t{1} << arity, true));
}

BooleanCombination BooleanCombination::intersection_of(std::size_t arity, std::initializer_list<std::size_t> args) {
  if (arity < 1 || arity > kMaxArity) throw InvalidArgument("boolean combination: bad arity");
  std::size_t required = 0;
  for (std::size_t i : args) {
    if (i >= arity) throw InvalidArgument("boolean combination: argument index out of range");
    required |= std::size_t{1} << i;
  }
  std::vector<bool> table(std::size_t{1} << arity);
  for (std::size_t a = 0; a < table.size(); ++a) table[a] = (a & required) == required;
  return BooleanCombination(arity, std::move(table));
}

FuzzySet complement(const FuzzySet& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - x[i];
  return FuzzySet(std::move(out));
}

FuzzySet intersect(const FuzzySet& x1, const FuzzySet& x2) {
  require_same_length(x1.size(), x2.size(), "intersect");
  std::vector<double> out(x1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x1[i] * x2[i];
  return FuzzySet(std::move(out));
}

FuzzySet unite(const FuzzySet& x1, const FuzzySet& x2) {
  require_same_length(x1.size(), x2.size(), "unite");
  std::vector<double> out(x1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = clamp_unit(x1[i] + x2[i] - x1[i] * x2[i]);
  return FuzzySet(std::move(out));
}

FuzzySet combine(const BooleanCombination& combination, std::span<const FuzzySet> sets) {
  const std::size_t n = combination.arity();
  if (sets.size() != n) {
    throw InvalidArgument("combine: combination has arity " + std::to_string(n) + " but " +
                          std::to_string(sets.size()) + " sets were given");
  }
  const std::size_t m = sets[0].size();
  for (const auto& s : sets) require_same_length(m, s.size(), "combine");

  const auto& table = combination.truth_table();
  const auto true_count = static_cast<std::size_t>(std::count(table.begin(), table.end(), true));
  // Sum over the smaller side of the table; a near-tautology becomes 1 - (few atoms).
  const bool sum_false_side = 2 * true_count > table.size();

  std::vector<double> out(m);
  for (std::size_t e = 0; e < m; ++e) {
    double total = 0.0;
    for (std::size_t a = 0; a < table.size(); ++a) {
      if (table[a] == sum_false_side) continue;
      double p = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double mu = sets[i][e];
        p *= ((a >> i) & 1U) ? mu : 1.0 - mu;
      }
      total += p;
    }
    out[e] = clamp_unit(sum_false_side ? 1.0 - total : total);
  }
  return FuzzySet(std::move(out));
}

double representative_probability(const FuzzySet& x, const CrispSet& y) {
  require_same_length(x.size(), y.size(), "representative_probability");
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) p *= y.contains(i) ? x[i] : 1.0 - x[i];
  return p;
}

double equipotence(const CrispSet& y, const FuzzySet& x) {
  require_same_length(x.size(), y.size(), "equipotence");
  const auto implies = [](double a, double b) { return std::min(1.0, 1.0 - a + b); };
  double eq = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mu_y = y.contains(i) ? 1.0 : 0.0;
    eq *= implies(x[i], mu_y) * implies(mu_y, x[i]);
  }
  return eq;
}

}  // namespace faq
