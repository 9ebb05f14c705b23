#pragma once

#include <random>
#include <vector>

#include "faq/fuzzy_set.hpp"

namespace testing {

inline std::vector<double> random_degrees(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> mu(m);
  for (double& d : mu) d = u(rng);
  return mu;
}

inline std::vector<std::vector<double>> degrees_of(const std::vector<faq::FuzzySet>& sets) {
  std::vector<std::vector<double>> out;
  for (const auto& s : sets) out.emplace_back(s.memberships().begin(), s.memberships().end());
  return out;
}

inline std::vector<faq::FuzzySet> random_sets(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<faq::FuzzySet> sets;
  for (std::size_t i = 0; i < n; ++i) sets.emplace_back(random_degrees(rng, m));
  return sets;
}

}  // namespace testing
