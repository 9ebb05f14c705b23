#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "faq/exact.hpp"
#include "faq/fuzzy_set.hpp"
#include "faq/quantifier.hpp"

namespace faq {

struct McConfig {
  std::uint64_t num_simulations = 100000;
  std::uint64_t seed = 0;
  /// Independent streams; partition p runs floor(N/P) simulations plus one if p < N mod P.
  std::size_t partitions = 1;
};

struct McEstimate {
  double value = 0.0;
  /// Sample standard deviation of the per-simulation values over sqrt(N).
  double standard_error = 0.0;
  std::uint64_t num_simulations = 0;
  std::uint64_t seed = 0;
  std::size_t partitions = 1;
};

/// Seed of the generator driving partition `partition` (SplitMix64 mixing of seed and index).
std::uint64_t partition_stream_seed(std::uint64_t seed, std::size_t partition) noexcept;

/// Monte Carlo estimate of F^A(Q)(X_1..X_n).
///
/// Each simulation draws every element of every X_i as an independent Bernoulli(mu)
/// trial (sets outer, elements inner) and evaluates Q on the resulting crisp sets.
/// The result depends only on (inputs, num_simulations, seed, partitions).
McEstimate mc_eval(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const McConfig& cfg);

/// Normalized empirical histogram of (|Φ_1|..|Φ_K|) over the simulations.
CardinalityTensor mc_histogram(std::span<const FuzzySet> sets, std::span<const BooleanCombination> combinations,
                               const McConfig& cfg, const EngineLimits& limits = {});

}  // namespace faq
