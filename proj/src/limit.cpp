#include "faq/limit.hpp"

#include <cmath>
#include <string>

#include "faq/errors.hpp"

namespace faq {

double limit_eval(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets) {
  require_arguments(q, sets);
  if (!q.has_normalized_form()) {
    throw InvalidArgument("limit evaluation needs a proportional quantifier; q' is undefined for absolute ones");
  }
  std::vector<double> proportions;
  proportions.reserve(q.num_combinations());
  for (const auto& c : q.combinations()) proportions.push_back(combine(c, sets).mean());
  return q.apply_normalized(proportions);
}

double zadeh_unary(const MembershipShape& shape, const FuzzySet& x) {
  validate(shape);
  return eval_shape(shape, x.mean());
}

double zadeh_binary(const MembershipShape& shape, const FuzzySet& x1, const FuzzySet& x2, double empty_value) {
  validate(shape);
  if (x1.size() != x2.size()) throw InvalidArgument("zadeh_binary: length mismatch");
  const double restrictor = x1.sigma_count();
  if (restrictor < 1e-15) return empty_value;
  return eval_shape(shape, intersect(x1, x2).sigma_count() / restrictor);
}

std::vector<FuzzySet> MembershipProfile::instantiate(std::size_t m) const {
  if (m < 1) throw InvalidArgument("profile: size must be >= 1");
  if (patterns.empty()) throw InvalidArgument("profile: needs at least one argument pattern");
  std::vector<FuzzySet> sets;
  sets.reserve(patterns.size());
  for (const auto& pattern : patterns) {
    if (pattern.empty()) throw InvalidArgument("profile: empty membership pattern");
    std::vector<double> mu(m);
    for (std::size_t e = 0; e < m; ++e) mu[e] = pattern[e % pattern.size()];
    sets.emplace_back(std::move(mu));
  }
  return sets;
}

std::vector<ConvergenceRow> convergence_table(const SemiFuzzyQuantifier& q, const MembershipProfile& profile,
                                              std::span<const std::size_t> sizes, const std::optional<McConfig>& mc,
                                              const EngineLimits& limits) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(sizes.size());
  for (std::size_t m : sizes) {
    const auto sets = profile.instantiate(m);
    ConvergenceRow row;
    row.m = m;
    row.exact = eval_dp(q, sets, limits);
    row.zadeh = limit_eval(q, sets);
    if (mc) row.mc = mc_eval(q, sets, *mc);
    row.abs_error = std::abs(row.exact - row.zadeh);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace faq
