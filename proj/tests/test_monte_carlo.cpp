#include <doctest.h>

#include <cmath>

#include "faq/catalog.hpp"
#include "faq/errors.hpp"
#include "faq/exact.hpp"
#include "faq/monte_carlo.hpp"

using namespace faq;

namespace {

const FuzzySet kBig{0.8, 0.9, 1.0, 0.2};
const FuzzySet kExpensive{1.0, 0.8, 0.3, 0.1};

SemiFuzzyQuantifier example2_quantifier() {
  CatalogParams p;
  p.shape = Trapezoid{0.5, 0.6, kInf, kInf};
  return standard_catalog("unary_prop", p);
}

}  // namespace

TEST_CASE("crisp inputs give the exact value with zero standard error") {
  const auto nearly_all = standard_catalog("nearly_all");
  const FuzzySet sets[] = {FuzzySet{1, 1, 1, 0}, FuzzySet{1, 1, 0, 1}};
  for (std::size_t partitions : {1, 3}) {
    const auto est = mc_eval(nearly_all, sets, McConfig{1000, 9, partitions});
    CHECK(est.value == eval_dp(nearly_all, sets));
    CHECK(est.standard_error == 0.0);
  }
}

TEST_CASE("estimates land near the exact value") {
  SUBCASE("Example 1") {
    const auto q = standard_catalog("nearly_all");
    const FuzzySet sets[] = {kBig, kExpensive};
    const auto est = mc_eval(q, sets, McConfig{1000000, 3, 4});
    CHECK(est.num_simulations == 1000000);
    CHECK(std::abs(est.value - eval_dp(q, sets)) <= 3.0 * est.standard_error);
    CHECK(std::abs(est.value - 0.346) <= 3.0 * est.standard_error + 0.0005);
  }
  SUBCASE("Example 2 at m = 50") {
    const auto q = example2_quantifier();
    const FuzzySet sets[] = {FuzzySet::constant(50, 0.5)};
    const auto est = mc_eval(q, sets, McConfig{100000, 1, 1});
    CHECK(est.standard_error == doctest::Approx(1.2e-3).epsilon(0.25));
    CHECK(std::abs(est.value - eval_dp(q, sets)) <= 3.0 * est.standard_error);
  }
}

TEST_CASE("determinism") {
  const auto q = standard_catalog("nearly_all");
  const FuzzySet sets[] = {kBig, kExpensive};
  const McConfig cfg{20000, 7, 4};
  const auto a = mc_eval(q, sets, cfg);
  const auto b = mc_eval(q, sets, cfg);
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
  const auto other_seed = mc_eval(q, sets, McConfig{20000, 8, 4});
  CHECK(other_seed.value != a.value);
  CHECK(partition_stream_seed(7, 0) != partition_stream_seed(7, 1));
  CHECK(partition_stream_seed(7, 0) != partition_stream_seed(8, 0));
}

TEST_CASE("partition sizes cover the requested simulations") {
  const auto q = standard_catalog("identity");
  const FuzzySet sets[] = {FuzzySet{0.5}};
  // With one element the estimate is the hit rate, so the count is recoverable from mean and stderr.
  const auto est = mc_eval(q, sets, McConfig{1001, 2, 7});
  CHECK(est.num_simulations == 1001);
  CHECK(est.partitions == 7);
  const double p = est.value;
  const double expected_se = std::sqrt(p * (1.0 - p) * 1001.0 / 1000.0 / 1001.0);
  CHECK(est.standard_error == doctest::Approx(expected_se).epsilon(1e-9));
}

TEST_CASE("configuration errors") {
  const auto q = standard_catalog("identity");
  const FuzzySet sets[] = {FuzzySet{0.5}};
  CHECK_THROWS_AS(mc_eval(q, sets, McConfig{0, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(mc_eval(q, sets, McConfig{10, 1, 0}), InvalidArgument);
  const FuzzySet two[] = {FuzzySet{0.5}, FuzzySet{0.5}};
  CHECK_THROWS_AS(mc_eval(q, two, McConfig{10, 1, 1}), InvalidArgument);
}

TEST_CASE("histograms") {
  SUBCASE("crisp point mass") {
    const FuzzySet sets[] = {FuzzySet{1, 0, 1}};
    const std::array combos = {BooleanCombination::argument(1, 0)};
    const auto h = mc_histogram(sets, combos, McConfig{500, 1, 2});
    CHECK(h.at({2}) == 1.0);
  }
  SUBCASE("two coins") {
    const FuzzySet sets[] = {FuzzySet{0.5, 0.5}};
    const std::array combos = {BooleanCombination::argument(1, 0)};
    const auto h = mc_histogram(sets, combos, McConfig{100000, 4, 3});
    const double tv = 0.5 * (std::abs(h.at({0}) - 0.25) + std::abs(h.at({1}) - 0.5) + std::abs(h.at({2}) - 0.25));
    CHECK(tv <= 0.01);
    CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("concentration at m = 50") {
    const FuzzySet sets[] = {FuzzySet::constant(50, 0.5)};
    const std::array combos = {BooleanCombination::argument(1, 0)};
    const auto h = mc_histogram(sets, combos, McConfig{100000, 5, 4});
    // 0.36 and 0.64 are lattice points (j = 18, 32): the closed interval holds 96.7% of the
    // binomial mass and the open one 93.5%.
    double closed = 0.0;
    double open = 0.0;
    for (std::size_t j = 18; j <= 32; ++j) {
      closed += h.at({j});
      if (j != 18 && j != 32) open += h.at({j});
    }
    CHECK(closed >= 0.95);
    CHECK(open == doctest::Approx(0.9350913529277278).epsilon(0.01));
  }
  SUBCASE("joint histogram matches the exact tensor") {
    const FuzzySet sets[] = {kBig, kExpensive};
    const auto combos = proportional_combinations();
    const auto h = mc_histogram(sets, combos, McConfig{200000, 6, 4});
    const auto exact = joint_combination_tensor(combos, sets);
    for (std::size_t i = 0; i < exact.probs().size(); ++i) CHECK(std::abs(h.probs()[i] - exact.probs()[i]) <= 0.01);
  }
  SUBCASE("budget") {
    const FuzzySet sets[] = {FuzzySet::constant(50, 0.5)};
    const std::array combos = {BooleanCombination::argument(1, 0)};
    EngineLimits tiny;
    tiny.tensor_memory_cap = 64;
    CHECK_THROWS_AS(mc_histogram(sets, combos, McConfig{10, 1, 1}, tiny), BudgetExceeded);
  }
}
