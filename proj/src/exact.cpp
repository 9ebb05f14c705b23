#include "faq/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "faq/errors.hpp"

namespace faq {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

// Row-major odometer over {0..bound}^dims, calling fn(index, offset).
template <class Fn>
void for_each_index(std::size_t dims, std::size_t bound, std::span<const std::size_t> strides, Fn&& fn) {
  std::vector<std::size_t> idx(dims, 0);
  std::size_t offset = 0;
  while (true) {
    fn(std::span<const std::size_t>(idx), offset);
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (idx[d] < bound) {
        ++idx[d];
        offset += strides[d];
        break;
      }
      offset -= idx[d] * strides[d];
      idx[d] = 0;
      if (d == 0) return;
    }
    if (dims == 0) return;
  }
}

std::vector<std::size_t> row_major_strides(std::size_t dims, std::size_t extent) {
  std::vector<std::size_t> strides(dims);
  std::size_t s = 1;
  for (std::size_t d = dims; d > 0; --d) {
    strides[d - 1] = s;
    s *= extent;
  }
  return strides;
}

// Elements of the dense tensor; throws when tensor plus scratch exceed the byte budget.
std::size_t checked_tensor_elements(std::size_t dims, std::size_t extent, const EngineLimits& limits) {
  const std::size_t per_element = 2 * sizeof(double);  // tensor + scratch
  std::size_t elements = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (elements > limits.tensor_memory_cap / per_element / extent) {
      throw BudgetExceeded("cardinality tensor with " + std::to_string(dims) + " axes of extent " +
                           std::to_string(extent) + " exceeds the tensor memory cap of " +
                           std::to_string(limits.tensor_memory_cap) +
                           " bytes (FA_QUANT_MEM_CAP); use Monte Carlo instead");
    }
    elements *= extent;
  }
  return elements;
}

// m_X(Y) for every Y ⊆ E encoded as a bitmask; same left-to-right product as representative_probability.
std::vector<double> subset_weights(const FuzzySet& x) {
  std::vector<double> w{1.0};
  w.reserve(std::size_t{1} << x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    const std::size_t half = w.size();
    w.resize(2 * half);
    for (std::size_t mask = 0; mask < half; ++mask) {
      w[mask | half] = w[mask] * x[e];
      w[mask] = w[mask] * (1.0 - x[e]);
    }
  }
  return w;
}

double expectation(const SemiFuzzyQuantifier& q, const CardinalityDistribution& dist) {
  const std::size_t m = dist.max_cardinality();
  double result = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    if (dist[j] == 0.0) continue;
    const std::size_t card[1] = {j};
    result += dist[j] * q.apply(card, m);
  }
  return result;
}

}  // namespace

EngineLimits EngineLimits::from_environment() {
  EngineLimits limits;
  if (const char* env = std::getenv("FA_QUANT_MEM_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || cap == 0) {
      throw InvalidArgument(std::string("FA_QUANT_MEM_CAP must be a positive byte count, got '") + env + "'");
    }
    limits.tensor_memory_cap = static_cast<std::size_t>(cap);
  }
  return limits;
}

double CardinalityDistribution::total_mass() const noexcept {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s;
}

double CardinalityDistribution::mean() const noexcept {
  double s = 0.0;
  for (std::size_t j = 0; j < probs_.size(); ++j) s += static_cast<double>(j) * probs_[j];
  return s;
}

double CardinalityDistribution::variance() const noexcept {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    const double dev = static_cast<double>(j) - mu;
    s += dev * dev * probs_[j];
  }
  return s;
}

CardinalityTensor::CardinalityTensor(std::size_t dims, std::size_t extent, std::vector<double> probs)
    : dims_(dims), extent_(extent), probs_(std::move(probs)) {
  std::size_t expected = 1;
  for (std::size_t d = 0; d < dims_; ++d) expected *= extent_;
  require(dims_ >= 1 && extent_ >= 1 && probs_.size() == expected, "cardinality tensor: shape mismatch");
}

double CardinalityTensor::at(std::span<const std::size_t> index) const {
  require(index.size() == dims_, "cardinality tensor: wrong number of indices");
  std::size_t offset = 0;
  for (std::size_t i : index) {
    require(i < extent_, "cardinality tensor: index out of range");
    offset = offset * extent_ + i;
  }
  return probs_[offset];
}

double CardinalityTensor::total_mass() const noexcept {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s;
}

std::vector<double> CardinalityTensor::marginal(std::size_t axis) const {
  require(axis < dims_, "cardinality tensor: axis out of range");
  const auto strides = row_major_strides(dims_, extent_);
  std::vector<double> out(extent_, 0.0);
  for (std::size_t off = 0; off < probs_.size(); ++off) {
    out[(off / strides[axis]) % extent_] += probs_[off];
  }
  return out;
}

std::size_t require_arguments(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets) {
  require(sets.size() == q.arity(), "quantifier of arity " + std::to_string(q.arity()) + " applied to " +
                                        std::to_string(sets.size()) + " sets");
  const std::size_t m = sets[0].size();
  for (const auto& s : sets) {
    require(s.size() == m, "all argument sets must share one referential (length mismatch)");
  }
  q.require_compatible(m);
  return m;
}

double oracle_eval(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const EngineLimits& limits) {
  const std::size_t m = require_arguments(q, sets);
  const std::size_t n = sets.size();
  if (n * m > limits.oracle_max_bits || m > 63) {
    throw BudgetExceeded("oracle enumeration needs 2^" + std::to_string(n * m) + " subset tuples; the budget is 2^" +
                         std::to_string(limits.oracle_max_bits) + " (n*m <= " +
                         std::to_string(limits.oracle_max_bits) + ")");
  }

  std::vector<std::vector<double>> weights;
  weights.reserve(n);
  for (const auto& s : sets) weights.push_back(subset_weights(s));

  std::vector<std::vector<std::size_t>> true_atoms;
  for (const auto& c : q.combinations()) {
    auto& atoms = true_atoms.emplace_back();
    for (std::size_t a = 0; a < c.atom_count(); ++a) {
      if (c.contains_atom(a)) atoms.push_back(a);
    }
  }

  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  const std::size_t atom_count = std::size_t{1} << n;
  std::vector<std::uint64_t> masks(n, 0);
  std::vector<std::uint64_t> atom_masks(atom_count);
  std::vector<std::size_t> cards(q.num_combinations());
  double result = 0.0;

  auto leaf = [&](double weight) {
    for (std::size_t a = 0; a < atom_count; ++a) {
      std::uint64_t bits = full;
      for (std::size_t i = 0; i < n; ++i) bits &= ((a >> i) & 1U) ? masks[i] : ~masks[i];
      atom_masks[a] = bits & full;
    }
    for (std::size_t j = 0; j < cards.size(); ++j) {
      std::uint64_t phi = 0;
      for (std::size_t a : true_atoms[j]) phi |= atom_masks[a];
      cards[j] = static_cast<std::size_t>(std::popcount(phi));
    }
    result += weight * q.apply(cards, m);
  };

  auto recurse = [&](auto& self, std::size_t i, double weight) -> void {
    if (i == n) {
      leaf(weight);
      return;
    }
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      const double w = weights[i][mask];
      if (w == 0.0) continue;
      masks[i] = mask;
      self(self, i + 1, weight * w);
    }
  };
  recurse(recurse, 0, 1.0);
  return result;
}

CardinalityDistribution cardinality_distribution(const FuzzySet& x) {
  const std::size_t m = x.size();
  std::vector<double> pr(m + 1, 0.0);
  pr[0] = 1.0;
  for (std::size_t e = 0; e < m; ++e) {
    const double mu = x[e];
    // Descending j reads Pr(j-1) before it is overwritten.
    for (std::size_t j = e + 1; j >= 1; --j) pr[j] = (1.0 - mu) * pr[j] + mu * pr[j - 1];
    pr[0] *= 1.0 - mu;
  }
  return CardinalityDistribution(std::move(pr));
}

double eval_unary(const SemiFuzzyQuantifier& q, const FuzzySet& x) {
  require(q.arity() == 1, "eval_unary: quantifier must be unary");
  require(q.num_combinations() == 1, "eval_unary: quantifier must depend on a single cardinality");
  const FuzzySet sets[1] = {x};
  require_arguments(q, sets);
  return expectation(q, cardinality_distribution(combine(q.combinations()[0], sets)));
}

CardinalityTensor joint_cardinality(const FuzzySet& x1, const FuzzySet& x2) {
  require(x1.size() == x2.size(), "joint_cardinality: length mismatch");
  const std::size_t m = x1.size();
  const std::size_t w = m + 1;
  std::vector<double> card(w * w, 0.0);
  std::vector<double> scratch(w * w, 0.0);
  card[0] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    const double stay = 1.0 - x1[i];
    const double only_first = x1[i] * (1.0 - x2[i]);
    const double both = x1[i] * x2[i];
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t k = 0; k <= j; ++k) {
        const double p = card[j * w + k];
        if (p == 0.0) continue;
        scratch[j * w + k] += stay * p;
        scratch[(j + 1) * w + k] += only_first * p;
        scratch[(j + 1) * w + k + 1] += both * p;
      }
    }
    card.swap(scratch);
  }
  return CardinalityTensor(2, w, std::move(card));
}

bool is_conservative(const SemiFuzzyQuantifier& q) noexcept {
  if (q.arity() != 2) return false;
  // Atoms 0 = (0,0) and 2 = (0,1) lie outside Y1.
  for (const auto& c : q.combinations()) {
    if (c.contains_atom(0) || c.contains_atom(2)) return false;
  }
  return true;
}

double eval_binary_conservative(const SemiFuzzyQuantifier& q, const FuzzySet& x1, const FuzzySet& x2) {
  require(is_conservative(q), "eval_binary_conservative: quantifier is not conservative binary");
  const FuzzySet sets[2] = {x1, x2};
  const std::size_t m = require_arguments(q, sets);
  const auto tensor = joint_cardinality(x1, x2);
  const auto probs = tensor.probs();
  const std::size_t w = m + 1;

  // |Φ| restricted to Y1 is a sum of |Y1 ∩ ¬Y2| = j - k (atom 1) and |Y1 ∩ Y2| = k (atom 3).
  std::vector<std::size_t> cards(q.num_combinations());
  double result = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    for (std::size_t k = 0; k <= j; ++k) {
      const double p = probs[j * w + k];
      if (p == 0.0) continue;
      for (std::size_t c = 0; c < cards.size(); ++c) {
        const auto& combo = q.combinations()[c];
        cards[c] = (combo.contains_atom(1) ? j - k : 0) + (combo.contains_atom(3) ? k : 0);
      }
      result += p * q.apply(cards, m);
    }
  }
  return result;
}

CardinalityTensor joint_combination_tensor(std::span<const BooleanCombination> combinations,
                                           std::span<const FuzzySet> sets, const EngineLimits& limits) {
  require(!combinations.empty(), "joint_combination_tensor: needs at least one combination");
  require(!sets.empty(), "joint_combination_tensor: needs at least one set");
  const std::size_t n = sets.size();
  const std::size_t m = sets[0].size();
  for (const auto& s : sets) require(s.size() == m, "joint_combination_tensor: length mismatch");
  for (const auto& c : combinations) {
    require(c.arity() == n, "joint_combination_tensor: combination arity does not match the number of sets");
  }

  const std::size_t dims = combinations.size();
  const std::size_t extent = m + 1;
  const std::size_t elements = checked_tensor_elements(dims, extent, limits);
  const auto strides = row_major_strides(dims, extent);

  // Offset shift of every atom: Σ_j [atom ∈ Φ_j] stride_j.
  const std::size_t atom_count = std::size_t{1} << n;
  std::vector<std::size_t> atom_shift(atom_count, 0);
  for (std::size_t a = 0; a < atom_count; ++a) {
    for (std::size_t j = 0; j < dims; ++j) {
      if (combinations[j].contains_atom(a)) atom_shift[a] += strides[j];
    }
  }

  std::vector<double> tensor(elements, 0.0);
  std::vector<double> scratch(elements, 0.0);
  tensor[0] = 1.0;
  std::vector<std::pair<std::size_t, double>> moves;

  for (std::size_t e = 0; e < m; ++e) {
    moves.clear();
    for (std::size_t a = 0; a < atom_count; ++a) {
      double p = 1.0;
      for (std::size_t i = 0; i < n; ++i) p *= ((a >> i) & 1U) ? sets[i][e] : 1.0 - sets[i][e];
      if (p == 0.0) continue;
      auto it = std::find_if(moves.begin(), moves.end(), [&](const auto& mv) { return mv.first == atom_shift[a]; });
      if (it == moves.end()) {
        moves.emplace_back(atom_shift[a], p);
      } else {
        it->second += p;
      }
    }

    std::fill(scratch.begin(), scratch.end(), 0.0);
    // After e elements no cardinality exceeds e.
    for_each_index(dims, e, strides, [&](std::span<const std::size_t>, std::size_t offset) {
      const double f = tensor[offset];
      if (f == 0.0) return;
      for (const auto& [shift, p] : moves) scratch[offset + shift] += p * f;
    });
    tensor.swap(scratch);
  }
  return CardinalityTensor(dims, extent, std::move(tensor));
}

double eval_general(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const EngineLimits& limits) {
  const std::size_t m = require_arguments(q, sets);
  const auto tensor = joint_combination_tensor(q.combinations(), sets, limits);
  const auto probs = tensor.probs();
  const auto strides = row_major_strides(tensor.dims(), tensor.extent());
  double result = 0.0;
  for_each_index(tensor.dims(), m, strides, [&](std::span<const std::size_t> idx, std::size_t offset) {
    const double f = probs[offset];
    if (f == 0.0) return;
    result += f * q.apply(idx, m);
  });
  return result;
}

double eval_dp(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const EngineLimits& limits) {
  require_arguments(q, sets);
  if (q.num_combinations() == 1) {
    return expectation(q, cardinality_distribution(combine(q.combinations()[0], sets)));
  }
  if (is_conservative(q)) return eval_binary_conservative(q, sets[0], sets[1]);
  return eval_general(q, sets, limits);
}

}  // namespace faq
