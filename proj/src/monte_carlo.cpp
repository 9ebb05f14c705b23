#include "faq/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>

#include "faq/errors.hpp"

namespace faq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_config(const McConfig& cfg) {
  if (cfg.num_simulations < 1) throw InvalidArgument("monte carlo: num_simulations must be >= 1");
  if (cfg.partitions < 1) throw InvalidArgument("monte carlo: partitions must be >= 1");
}

std::uint64_t partition_size(const McConfig& cfg, std::size_t p) {
  const std::uint64_t base = cfg.num_simulations / cfg.partitions;
  const std::uint64_t extra = cfg.num_simulations % cfg.partitions;
  return base + (p < extra ? 1 : 0);
}

// Draws crisp representatives and reports the combination cardinalities of each simulation.
class Sampler {
 public:
  Sampler(std::span<const FuzzySet> sets, std::span<const BooleanCombination> combinations)
      : sets_(sets), m_(sets[0].size()), atoms_(m_), cards_(combinations.size()) {
    for (const auto& c : combinations) {
      auto& t = tables_.emplace_back(c.atom_count());
      for (std::size_t a = 0; a < t.size(); ++a) t[a] = c.contains_atom(a) ? 1 : 0;
    }
  }

  template <class Fn>
  void run(std::uint64_t simulations, std::uint64_t stream_seed, Fn&& on_sample) {
    std::mt19937_64 rng(stream_seed);
    for (std::uint64_t s = 0; s < simulations; ++s) {
      std::fill(atoms_.begin(), atoms_.end(), 0U);
      for (std::size_t i = 0; i < sets_.size(); ++i) {
        const auto mu = sets_[i].memberships();
        for (std::size_t e = 0; e < m_; ++e) {
          // 53-bit uniform in [0,1): mu = 1 always hits, mu = 0 never does.
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          if (u < mu[e]) atoms_[e] |= 1U << i;
        }
      }
      std::fill(cards_.begin(), cards_.end(), std::size_t{0});
      for (std::size_t e = 0; e < m_; ++e) {
        for (std::size_t j = 0; j < tables_.size(); ++j) cards_[j] += tables_[j][atoms_[e]];
      }
      on_sample(std::span<const std::size_t>(cards_));
    }
  }

  std::size_t m() const noexcept { return m_; }

 private:
  std::span<const FuzzySet> sets_;
  std::size_t m_;
  std::vector<std::vector<std::uint8_t>> tables_;
  std::vector<std::uint32_t> atoms_;
  std::vector<std::size_t> cards_;
};

// Runs fn(partition) for every partition on a small worker pool; rethrows the first failure.
template <class Fn>
void for_each_partition(std::size_t partitions, Fn&& fn) {
  const std::size_t hw = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(partitions, hw);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (std::size_t p = next++; p < partitions && !failed; p = next++) {
      try {
        fn(p);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

// Welford running mean and squared-deviation sum.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * (n_b / n);
    m2 += other.m2 + delta * delta * (n_a * n_b / n);
    count += other.count;
  }
};

}  // namespace

std::uint64_t partition_stream_seed(std::uint64_t seed, std::size_t partition) noexcept {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(partition));
}

McEstimate mc_eval(const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets, const McConfig& cfg) {
  require_config(cfg);
  const std::size_t m = require_arguments(q, sets);
  if (q.arity() > 32) throw InvalidArgument("monte carlo: arity above 32 is not supported");

  std::vector<Moments> parts(cfg.partitions);
  for_each_partition(cfg.partitions, [&](std::size_t p) {
    Sampler sampler(sets, q.combinations());
    Moments acc;
    sampler.run(partition_size(cfg, p), partition_stream_seed(cfg.seed, p),
                [&](std::span<const std::size_t> cards) { acc.add(q.apply(cards, m)); });
    parts[p] = acc;
  });

  Moments total;
  for (const auto& part : parts) total.merge(part);

  McEstimate est;
  est.value = std::clamp(total.mean, 0.0, 1.0);
  const double n = static_cast<double>(total.count);
  est.standard_error = total.count > 1 ? std::sqrt(std::max(0.0, total.m2 / (n - 1.0)) / n) : 0.0;
  est.num_simulations = cfg.num_simulations;
  est.seed = cfg.seed;
  est.partitions = cfg.partitions;
  return est;
}

CardinalityTensor mc_histogram(std::span<const FuzzySet> sets, std::span<const BooleanCombination> combinations,
                               const McConfig& cfg, const EngineLimits& limits) {
  require_config(cfg);
  if (sets.empty() || combinations.empty()) throw InvalidArgument("mc_histogram: needs sets and combinations");
  const std::size_t m = sets[0].size();
  for (const auto& s : sets) {
    if (s.size() != m) throw InvalidArgument("mc_histogram: length mismatch");
  }
  for (const auto& c : combinations) {
    if (c.arity() != sets.size()) throw InvalidArgument("mc_histogram: combination arity mismatch");
  }

  const std::size_t dims = combinations.size();
  const std::size_t extent = m + 1;
  std::size_t elements = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (elements > limits.tensor_memory_cap / sizeof(double) / extent) {
      throw BudgetExceeded("mc_histogram: dense histogram exceeds the tensor memory cap (FA_QUANT_MEM_CAP)");
    }
    elements *= extent;
  }

  std::vector<std::unordered_map<std::size_t, std::uint64_t>> counts(cfg.partitions);
  for_each_partition(cfg.partitions, [&](std::size_t p) {
    Sampler sampler(sets, combinations);
    auto& local = counts[p];
    sampler.run(partition_size(cfg, p), partition_stream_seed(cfg.seed, p), [&](std::span<const std::size_t> cards) {
      std::size_t offset = 0;
      for (std::size_t c : cards) offset = offset * extent + c;
      ++local[offset];
    });
  });

  std::vector<std::uint64_t> merged(elements, 0);
  for (const auto& local : counts) {
    for (const auto& [offset, c] : local) merged[offset] += c;
  }
  std::vector<double> probs(elements);
  const double n = static_cast<double>(cfg.num_simulations);
  for (std::size_t i = 0; i < elements; ++i) probs[i] = static_cast<double>(merged[i]) / n;
  return CardinalityTensor(dims, extent, std::move(probs));
}

}  // namespace faq
