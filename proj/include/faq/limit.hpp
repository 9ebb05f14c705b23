#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "faq/exact.hpp"
#include "faq/fuzzy_set.hpp"
#include "faq/monte_carlo.hpp"
#include "faq/quantifier.hpp"
#include "faq/shape.hpp"

namespace faq {

/// Large-m limit of F^A: q' evaluated at the mean memberships of the combined sets.
/// Throws InvalidArgument when Q has no proportional reading.
double limit_eval(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets);

/// Zadeh's sigma-count model shape(Σ mu / m).
double zadeh_unary(const MembershipShape& shape, const FuzzySet& x);

/// shape(Σ mu1 mu2 / Σ mu1); empty_value when Σ mu1 vanishes.
double zadeh_binary(const MembershipShape& shape, const FuzzySet& x1, const FuzzySet& x2, double empty_value = 1.0);

/// Per-argument membership patterns repeated cyclically to the requested size.
struct MembershipProfile {
  std::vector<std::vector<double>> patterns;

  std::vector<FuzzySet> instantiate(std::size_t m) const;
};

struct ConvergenceRow {
  std::size_t m = 0;
  double exact = 0.0;
  double zadeh = 0.0;
  std::optional<McEstimate> mc;
  double abs_error = 0.0;  // |exact - zadeh|
};

/// Exact, limit, and optionally Monte Carlo values of Q on the profile at each size.
std::vector<ConvergenceRow> convergence_table(const SemiFuzzyQuantifier& q, const MembershipProfile& profile,
                                              std::span<const std::size_t> sizes,
                                              const std::optional<McConfig>& mc = std::nullopt,
                                              const EngineLimits& limits = {});

}  // namespace faq
