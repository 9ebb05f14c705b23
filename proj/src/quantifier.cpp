#include "faq/quantifier.hpp"

#include <cstdint>
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

// Denominators of the averaged ratio below this route to the empty-restrictor value.
constexpr double kEmptyRatioThreshold = 1e-15;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

void require_axis(std::size_t axis, std::size_t k, const char* what) {
  require(axis < k, std::string(what) + ": axis " + std::to_string(axis) + " out of range for " +
                        std::to_string(k) + " combinations");
}

std::size_t table_size(std::size_t extent, std::size_t dims) {
  std::size_t size = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    require(extent == 0 || size <= SIZE_MAX / extent, "table: size overflow");
    size *= extent;
  }
  return size;
}

std::vector<BooleanCombination> remap_atoms(const std::vector<BooleanCombination>& combos,
                                            auto&& source_atom) {
  std::vector<BooleanCombination> out;
  out.reserve(combos.size());
  for (const auto& c : combos) {
    std::vector<bool> table(c.atom_count());
    for (std::size_t a = 0; a < table.size(); ++a) table[a] = c.contains_atom(source_atom(a));
    out.emplace_back(c.arity(), std::move(table));
  }
  return out;
}

}  // namespace

SemiFuzzyQuantifier::SemiFuzzyQuantifier(std::size_t arity, std::vector<BooleanCombination> combinations,
                                         CardinalityFunction q, bool negated)
    : arity_(arity), combinations_(std::move(combinations)), q_(std::move(q)), negated_(negated) {
  require(arity_ >= 1 && arity_ <= kMaxArity, "quantifier: arity must be in [1,16]");
  require(!combinations_.empty(), "quantifier: needs at least one boolean combination");
  for (const auto& c : combinations_) {
    require(c.arity() == arity_, "quantifier: combination arity " + std::to_string(c.arity()) +
                                     " does not match quantifier arity " + std::to_string(arity_));
  }
  const std::size_t k = combinations_.size();
  std::visit(Overloaded{
                 [k](const CountForm& f) {
                   require_axis(f.axis, k, "count form");
                   validate(f.shape);
                 },
                 [k](const ProportionForm& f) {
                   require_axis(f.axis, k, "proportion form");
                   validate(f.shape);
                 },
                 [k](const RatioForm& f) {
                   require_axis(f.numerator_axis, k, "ratio form");
                   require_axis(f.rest_axis, k, "ratio form");
                   require(f.numerator_axis != f.rest_axis, "ratio form: axes must differ");
                   require(f.empty_value >= 0.0 && f.empty_value <= 1.0,
                           "ratio form: empty_restrictor_value outside [0,1]");
                   validate(f.shape);
                 },
                 [k](const TableForm& f) {
                   require(f.extent >= 2, "table form: extent must be m+1 >= 2");
                   require(f.values.size() == table_size(f.extent, k),
                           "table form: expected extent^K = " + std::to_string(table_size(f.extent, k)) +
                               " values, got " + std::to_string(f.values.size()));
                   for (double v : f.values) require(v >= 0.0 && v <= 1.0, "table form: value outside [0,1]");
                 },
             },
             q_);
}

QuantifierKind SemiFuzzyQuantifier::kind() const noexcept {
  return (std::holds_alternative<ProportionForm>(q_) || std::holds_alternative<RatioForm>(q_))
             ? QuantifierKind::proportional
             : QuantifierKind::absolute;
}

void SemiFuzzyQuantifier::require_compatible(std::size_t m) const {
  require(m >= 1, "quantifier: referential must not be empty");
  if (const auto* t = std::get_if<TableForm>(&q_)) {
    require(t->extent == m + 1, "table form: q is tabulated for m = " + std::to_string(t->extent - 1) +
                                    " but the sets have m = " + std::to_string(m));
  }
}

double SemiFuzzyQuantifier::raw(std::span<const std::size_t> cards, std::size_t m) const {
  require(cards.size() == combinations_.size(), "apply_q: expected " + std::to_string(combinations_.size()) +
                                                    " cardinalities, got " + std::to_string(cards.size()));
  for (std::size_t c : cards) {
    require(c <= m, "apply_q: cardinality " + std::to_string(c) + " exceeds m = " + std::to_string(m));
  }
  return std::visit(
      Overloaded{
          [&](const CountForm& f) { return eval_shape(f.shape, static_cast<double>(cards[f.axis])); },
          [&](const ProportionForm& f) {
            require(m >= 1, "apply_q: m must be positive");
            return eval_shape(f.shape, static_cast<double>(cards[f.axis]) / static_cast<double>(m));
          },
          [&](const RatioForm& f) {
            const std::size_t num = cards[f.numerator_axis];
            const std::size_t den = num + cards[f.rest_axis];
            if (den == 0) return f.empty_value;
            return eval_shape(f.shape, static_cast<double>(num) / static_cast<double>(den));
          },
          [&](const TableForm& f) {
            require(f.extent == m + 1, "apply_q: table extent does not match m");
            std::size_t offset = 0;
            for (std::size_t c : cards) offset = offset * f.extent + c;
            return f.values[offset];
          },
      },
      q_);
}

double SemiFuzzyQuantifier::apply(std::span<const std::size_t> cards, std::size_t m) const {
  const double v = raw(cards, m);
  return negated_ ? 1.0 - v : v;
}

bool SemiFuzzyQuantifier::has_normalized_form() const noexcept { return kind() == QuantifierKind::proportional; }

double SemiFuzzyQuantifier::apply_normalized(std::span<const double> proportions) const {
  require(proportions.size() == combinations_.size(), "q': wrong number of proportions");
  const double v = std::visit(
      Overloaded{
          [&](const ProportionForm& f) { return eval_shape(f.shape, proportions[f.axis]); },
          [&](const RatioForm& f) {
            const double num = proportions[f.numerator_axis];
            const double den = num + proportions[f.rest_axis];
            if (den < kEmptyRatioThreshold) return f.empty_value;
            return eval_shape(f.shape, num / den);
          },
          [](const auto&) -> double {
            throw InvalidArgument("q' is undefined for absolute quantifiers (count or table form)");
          },
      },
      q_);
  return negated_ ? 1.0 - v : v;
}

double SemiFuzzyQuantifier::evaluate_crisp(std::span<const CrispSet> sets) const {
  require(sets.size() == arity_, "quantifier: expected " + std::to_string(arity_) + " arguments, got " +
                                     std::to_string(sets.size()));
  const auto cards = combination_cardinalities(combinations_, sets);
  return apply(cards, sets[0].size());
}

double apply_q(const SemiFuzzyQuantifier& q, std::span<const std::size_t> cards, std::size_t m) {
  return q.apply(cards, m);
}

std::vector<std::size_t> combination_cardinalities(const std::vector<BooleanCombination>& combinations,
                                                   std::span<const CrispSet> sets) {
  require(!sets.empty(), "cardinalities: no sets");
  const std::size_t m = sets[0].size();
  for (const auto& s : sets) require(s.size() == m, "cardinalities: length mismatch");
  std::vector<std::size_t> cards(combinations.size(), 0);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t atom = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].contains(e)) atom |= std::size_t{1} << i;
    }
    for (std::size_t j = 0; j < combinations.size(); ++j) {
      require(combinations[j].arity() == sets.size(), "cardinalities: arity mismatch");
      if (combinations[j].contains_atom(atom)) ++cards[j];
    }
  }
  return cards;
}

SemiFuzzyQuantifier negate_external(const SemiFuzzyQuantifier& q) {
  return SemiFuzzyQuantifier(q.arity(), q.combinations(), q.cardinality_function(), !q.negated());
}

SemiFuzzyQuantifier negate_internal(const SemiFuzzyQuantifier& q) {
  const std::size_t last = std::size_t{1} << (q.arity() - 1);
  return SemiFuzzyQuantifier(q.arity(), remap_atoms(q.combinations(), [last](std::size_t a) { return a ^ last; }),
                             q.cardinality_function(), q.negated());
}

SemiFuzzyQuantifier dual(const SemiFuzzyQuantifier& q) { return negate_external(negate_internal(q)); }

SemiFuzzyQuantifier transpose_args(const SemiFuzzyQuantifier& q, std::size_t i, std::size_t j) {
  require(i < q.arity() && j < q.arity(), "transpose_args: argument index out of range for arity " +
                                              std::to_string(q.arity()));
  const auto swap_bits = [i, j](std::size_t a) {
    const std::size_t bi = (a >> i) & 1U;
    const std::size_t bj = (a >> j) & 1U;
    if (bi == bj) return a;
    return a ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
  };
  return SemiFuzzyQuantifier(q.arity(), remap_atoms(q.combinations(), swap_bits), q.cardinality_function(),
                             q.negated());
}

}  // namespace faq
