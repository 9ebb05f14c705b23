#include "faq/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "faq/catalog.hpp"
#include "faq/errors.hpp"
#include "faq/exact.hpp"

namespace faq {

namespace {

constexpr double kExactTolerance = 1e-12;
constexpr double kRuspiniTolerance = 1e-9;
constexpr double kMinStrictIncrease = 1e-15;

constexpr std::array<std::string_view, 10> kSuites = {"generalization", "negation",         "averaging",
                                                      "ruspini",        "transposition",    "fine_distinction",
                                                      "projection",     "monotonicity",     "variance",
                                                      "golden"};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  /// Instances 0..3 are the corners all-0, all-1, all-0.5 and a single non-zero element.
  FuzzySet fuzzy_set(std::size_t m, std::size_t instance) {
    std::vector<double> mu(m);
    switch (instance) {
      case 0:
        break;
      case 1:
        std::fill(mu.begin(), mu.end(), 1.0);
        break;
      case 2:
        std::fill(mu.begin(), mu.end(), 0.5);
        break;
      case 3:
        mu[index(m)] = uniform();
        break;
      default:
        for (double& d : mu) d = uniform();
    }
    return FuzzySet(std::move(mu));
  }

  std::vector<FuzzySet> fuzzy_sets(std::size_t n, std::size_t m, std::size_t instance) {
    std::vector<FuzzySet> sets;
    sets.reserve(n);
    // Corners apply to the first argument only; the others stay random.
    for (std::size_t i = 0; i < n; ++i) sets.push_back(fuzzy_set(m, i == 0 ? instance : 4));
    return sets;
  }

 private:
  std::mt19937_64 rng_;
};

PropertyReport finish(std::string id, std::size_t instances, double deviation, double tolerance,
                      std::string detail = {}) {
  PropertyReport r;
  r.id = std::move(id);
  r.instances = instances;
  r.max_deviation = deviation;
  r.tolerance = tolerance;
  r.passed = deviation <= tolerance;
  r.detail = std::move(detail);
  return r;
}

std::vector<FuzzySet> with_replaced(std::span<const FuzzySet> sets, std::size_t i, FuzzySet replacement) {
  std::vector<FuzzySet> out(sets.begin(), sets.end());
  out[i] = std::move(replacement);
  return out;
}

FuzzySet with_degree(const FuzzySet& x, std::size_t e, double degree) {
  std::vector<double> mu(x.memberships().begin(), x.memberships().end());
  mu[e] = degree;
  return FuzzySet(std::move(mu));
}

SemiFuzzyQuantifier at_least_sixty_percent() {
  CatalogParams p;
  p.shape = Interval{0.6, kInf};
  return standard_catalog("binary_prop", p);
}

SemiFuzzyQuantifier about_sixty_percent_or_more() {
  CatalogParams p;
  p.shape = SShape{0.4, 0.6};
  return standard_catalog("binary_prop", p);
}

// "the number of Y1 that are Y2 is about twice the number of Y1 that are Y3".
SemiFuzzyQuantifier about_twice() {
  return SemiFuzzyQuantifier(3,
                             {BooleanCombination::intersection_of(3, {0, 1}),
                              BooleanCombination::intersection_of(3, {0, 2})},
                             RatioForm{Trapezoid{0.5, 2.0 / 3.0, 2.0 / 3.0, 0.8}, 0, 1, 0.0});
}

SemiFuzzyQuantifier catalog_with_value(std::string_view name, double value, std::size_t arity = 0) {
  CatalogParams p;
  p.values = {value};
  p.arity = arity;
  return standard_catalog(name, p);
}

std::vector<std::pair<std::string, SemiFuzzyQuantifier>> generalization_quantifiers() {
  CatalogParams about_10;
  about_10.arity = 2;
  about_10.shape = Trapezoid{6, 8, 12, 14};
  return {
      {"exists", standard_catalog("exists")},
      {"identity", standard_catalog("identity")},
      {"at_least_3", catalog_with_value("at_least_k", 3)},
      {"exactly_2", catalog_with_value("exactly_k", 2)},
      {"about_10", standard_catalog("about_k", about_10)},
      {"all", standard_catalog("all")},
      {"some", standard_catalog("some")},
      {"no", standard_catalog("no")},
      {"nearly_all", standard_catalog("nearly_all")},
      {"at_least_60%", at_least_sixty_percent()},
      {"about_60%_or_more", about_sixty_percent_or_more()},
      {"about_twice", about_twice()},
  };
}

std::vector<MembershipShape> three_trapezoids() {
  return {Trapezoid{-kInf, -kInf, 0.1, 0.3}, Trapezoid{0.1, 0.3, 0.7, 0.9}, Trapezoid{0.7, 0.9, kInf, kInf}};
}

std::string format_golden(const GoldenValue& g, double actual) {
  std::ostringstream os;
  os.precision(17);
  os << g.name << ": expected " << g.expected << " +- " << g.tolerance << ", got " << actual;
  return os.str();
}

}  // namespace

Evaluator dp_evaluator() {
  return [](const SemiFuzzyQuantifier& q, std::span<const FuzzySet> sets) { return eval_dp(q, sets); };
}

PropertyReport check_correct_generalization(const SemiFuzzyQuantifier& q, std::size_t m, const Evaluator& evaluate) {
  const std::size_t n = q.arity();
  if (m < 1 || m > 8 || n * m > 18) {
    throw BudgetExceeded("correct generalization: exhaustive check needs m <= 8 and n*m <= 18");
  }
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  const std::uint64_t tuples = std::uint64_t{1} << (n * m);
  double worst = 0.0;
  std::vector<CrispSet> crisp;
  std::vector<FuzzySet> fuzzy;
  for (std::uint64_t code = 0; code < tuples; ++code) {
    crisp.clear();
    fuzzy.clear();
    for (std::size_t i = 0; i < n; ++i) {
      crisp.push_back(CrispSet::from_mask((code >> (i * m)) & full, m));
      fuzzy.push_back(crisp.back().to_fuzzy());
    }
    worst = std::max(worst, std::abs(evaluate(q, fuzzy) - q.evaluate_crisp(crisp)));
  }
  return finish("generalization", static_cast<std::size_t>(tuples), worst, kExactTolerance);
}

PropertyReport check_negations_and_dual(const SemiFuzzyQuantifier& q, std::size_t samples, std::size_t m,
                                        std::uint64_t seed) {
  Sampler sampler(seed);
  const auto ext = negate_external(q);
  const auto ext_twice = negate_external(ext);
  const auto internal = negate_internal(q);
  const auto dualized = dual(q);
  const std::size_t last = q.arity() - 1;
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto sets = sampler.fuzzy_sets(q.arity(), m, s);
    const auto flipped = with_replaced(sets, last, complement(sets[last]));
    const double v = eval_dp(q, sets);
    const double v_flipped = eval_dp(q, flipped);
    worst = std::max({worst, std::abs(eval_dp(ext, sets) - (1.0 - v)), std::abs(eval_dp(ext_twice, sets) - v),
                      std::abs(eval_dp(internal, sets) - v_flipped),
                      std::abs(eval_dp(dualized, sets) - (1.0 - v_flipped))});
  }
  return finish("negation", samples, worst, kExactTolerance);
}

PropertyReport check_averaging_identity(std::size_t samples, std::size_t max_m, std::uint64_t seed) {
  Sampler sampler(seed);
  const auto identity = standard_catalog("identity");
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t m = s == 0 ? max_m : 1 + sampler.index(max_m);
    const FuzzySet x = sampler.fuzzy_set(m, s < 4 ? s : 4);
    const FuzzySet sets[1] = {x};
    worst = std::max(worst, std::abs(eval_dp(identity, sets) - x.mean()));
  }
  return finish("averaging", samples, worst, kExactTolerance);
}

PropertyReport check_ruspini(std::span<const SemiFuzzyQuantifier> partition, std::size_t samples, std::size_t m,
                             std::uint64_t seed) {
  if (partition.empty()) throw InvalidArgument("ruspini check: empty partition");
  const std::size_t n = partition[0].arity();
  for (const auto& q : partition) {
    if (q.arity() != n) throw InvalidArgument("ruspini check: partition members differ in arity");
  }
  Sampler sampler(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto sets = sampler.fuzzy_sets(n, m, s);
    double sum = 0.0;
    for (const auto& q : partition) sum += eval_dp(q, sets);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return finish("ruspini", samples, worst, kRuspiniTolerance);
}

PropertyReport check_fine_distinction(const MembershipShape& h, std::size_t arity, std::size_t samples,
                                      std::size_t m, std::uint64_t seed, double bump) {
  if (!(bump > 0.0)) throw InvalidArgument("fine distinction: bump must be positive");
  if (arity != 1 && arity != 2) throw InvalidArgument("fine distinction: arity must be 1 or 2");
  const auto q = arity == 1
                     ? SemiFuzzyQuantifier(1, {BooleanCombination::argument(1, 0)}, ProportionForm{h, 0})
                     : SemiFuzzyQuantifier(2, proportional_combinations(), RatioForm{h, 0, 1, 1.0});
  const std::size_t criteria = arity - 1;

  Sampler sampler(seed);
  double worst = 0.0;
  double smallest_increase = kInf;
  std::size_t checked = 0;
  for (std::size_t attempt = 0; checked < samples && attempt < 10 * samples + 10; ++attempt) {
    std::vector<FuzzySet> sets;
    if (arity == 2) sets.push_back(sampler.fuzzy_set(m, 4));
    sets.push_back(sampler.fuzzy_set(m, attempt < 4 ? attempt : 4));

    const auto eligible = [&](std::size_t e) {
      return sets[criteria][e] < 1.0 && (arity == 1 || sets[0][e] > 0.0);
    };
    const std::size_t start = sampler.index(m);
    std::size_t e = start;
    while (!eligible(e)) {
      e = (e + 1) % m;
      if (e == start) break;
    }
    if (!eligible(e)) continue;

    const double before = eval_dp(q, sets);
    const auto bumped =
        with_replaced(sets, criteria, with_degree(sets[criteria], e, std::min(1.0, sets[criteria][e] + bump)));
    const double increase = eval_dp(q, bumped) - before;
    smallest_increase = std::min(smallest_increase, increase);
    worst = std::max(worst, kMinStrictIncrease - increase);
    ++checked;
  }
  worst = std::max(worst, 0.0);
  std::ostringstream detail;
  detail.precision(17);
  detail << "smallest increase " << smallest_increase;
  auto report = finish(arity == 1 ? "fine_distinction:unary" : "fine_distinction:binary", checked, worst, 0.0,
                       detail.str());
  if (checked < samples) {
    report.passed = false;
    report.detail += "; only " + std::to_string(checked) + " eligible bumps";
  }
  return report;
}

PropertyReport check_projection_theorem(std::span<const BooleanCombination> combinations, std::size_t samples,
                                        std::size_t m, std::uint64_t seed) {
  if (combinations.empty()) throw InvalidArgument("projection check: no combinations");
  const std::size_t n = combinations[0].arity();
  Sampler sampler(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto sets = sampler.fuzzy_sets(n, m, s);
    const auto tensor = joint_combination_tensor(combinations, sets);
    for (std::size_t j = 0; j < combinations.size(); ++j) {
      const auto marginal = tensor.marginal(j);
      const auto unary = cardinality_distribution(combine(combinations[j], sets));
      for (std::size_t k = 0; k < marginal.size(); ++k) {
        worst = std::max(worst, std::abs(marginal[k] - unary[k]));
      }
    }
  }
  return finish("projection", samples, worst, kExactTolerance);
}

PropertyReport check_transposition(const SemiFuzzyQuantifier& q, std::size_t i, std::size_t j, std::size_t samples,
                                   std::size_t m, std::uint64_t seed) {
  const auto transposed = transpose_args(q, i, j);
  Sampler sampler(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto sets = sampler.fuzzy_sets(q.arity(), m, s);
    auto swapped = sets;
    std::swap(swapped[i], swapped[j]);
    worst = std::max(worst, std::abs(eval_dp(transposed, swapped) - eval_dp(q, sets)));
  }
  return finish("transposition", samples, worst, kExactTolerance);
}

PropertyReport check_monotonicity(const SemiFuzzyQuantifier& q, std::size_t argument, std::size_t samples,
                                  std::size_t m, std::uint64_t seed) {
  if (argument >= q.arity()) throw InvalidArgument("monotonicity check: argument out of range");
  Sampler sampler(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto sets = sampler.fuzzy_sets(q.arity(), m, s);
    const std::size_t e = sampler.index(m);
    const double mu = sets[argument][e];
    const double raised = mu + sampler.uniform() * (1.0 - mu);
    const auto higher = with_replaced(sets, argument, with_degree(sets[argument], e, raised));
    worst = std::max(worst, eval_dp(q, sets) - eval_dp(q, higher));
  }
  return finish("monotonicity", samples, std::max(worst, 0.0), kExactTolerance);
}

PropertyReport check_variance_decay(std::size_t samples, std::size_t max_m, std::uint64_t seed) {
  Sampler sampler(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t m = s == 0 ? max_m : 1 + sampler.index(max_m);
    const FuzzySet x = sampler.fuzzy_set(m, s < 4 ? s : 4);
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    double closed_form = 0.0;
    for (double mu : x.memberships()) closed_form += mu * (1.0 - mu);
    worst = std::max(worst, std::abs(cardinality_distribution(x).variance() / m2 - closed_form / m2));
  }
  return finish("variance", samples, worst, kExactTolerance);
}

std::vector<GoldenValue> default_goldens() {
  return {
      {"example1", 0.346, 5e-4},
      // Exact binomial(50, 1/2) expectation computed independently; see README.
      {"example2_m50", 0.25642985942265634, 1e-10},
      {"example2_m100", 0.195, 5e-4},
      {"example2_m500", 0.089, 5e-4},
  };
}

double golden_actual(std::string_view name) {
  if (name == "example1") {
    const FuzzySet sets[2] = {FuzzySet{0.8, 0.9, 1.0, 0.2}, FuzzySet{1.0, 0.8, 0.3, 0.1}};
    return eval_dp(standard_catalog("nearly_all"), sets);
  }
  constexpr std::string_view prefix = "example2_m";
  if (name.starts_with(prefix)) {
    const std::string digits(name.substr(prefix.size()));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("golden: bad size in '" + std::string(name) + "'");
    }
    CatalogParams p;
    p.shape = Trapezoid{0.5, 0.6, kInf, kInf};
    const FuzzySet sets[1] = {FuzzySet::constant(std::stoul(digits), 0.5)};
    return eval_dp(standard_catalog("unary_prop", p), sets);
  }
  throw InvalidArgument("golden: unknown scenario '" + std::string(name) + "'");
}

PropertyReport check_golden(std::span<const GoldenValue> goldens) {
  // Deviation is |actual - expected| in units of each value's own tolerance.
  double worst = 0.0;
  std::string detail;
  for (const auto& g : goldens) {
    if (!(g.tolerance > 0.0)) throw InvalidArgument("golden: tolerance must be positive for " + g.name);
    const double actual = golden_actual(g.name);
    const double dev = std::abs(actual - g.expected) / g.tolerance;
    if (dev > 1.0) detail += (detail.empty() ? "" : "; ") + format_golden(g, actual);
    worst = std::max(worst, dev);
  }
  return finish("golden", goldens.size(), worst, 1.0, detail);
}

std::span<const std::string_view> suite_names() { return kSuites; }

std::vector<PropertyReport> run_suites(std::span<const std::string> suites, std::uint64_t seed,
                                       const SuiteOptions& options) {
  for (const auto& s : suites) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) {
      throw InvalidArgument("unknown suite '" + s + "'");
    }
  }
  const auto wanted = [&](std::string_view name) {
    return suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end();
  };
  const auto tagged = [](PropertyReport r, const std::string& tag) {
    r.id += ":" + tag;
    return r;
  };

  std::vector<PropertyReport> reports;
  if (wanted("generalization")) {
    for (const auto& [name, q] : generalization_quantifiers()) {
      reports.push_back(tagged(check_correct_generalization(q, q.arity() == 3 ? 4 : 6), name));
    }
  }
  if (wanted("negation")) {
    const std::vector<std::pair<std::string, SemiFuzzyQuantifier>> quantifiers = {
        {"all", standard_catalog("all")},
        {"nearly_all", standard_catalog("nearly_all")},
        {"at_least_60%", at_least_sixty_percent()},
        {"about_60%_or_more", about_sixty_percent_or_more()},
        {"about_twice", about_twice()},
    };
    for (const auto& [name, q] : quantifiers) {
      reports.push_back(tagged(check_negations_and_dual(q, 100, 6, seed), name));
    }
    // no(X1, ¬X2) and all(X1, X2) coincide.
    Sampler sampler(seed + 1);
    const auto no = standard_catalog("no");
    const auto all = standard_catalog("all");
    double worst = 0.0;
    for (std::size_t s = 0; s < 100; ++s) {
      const auto sets = sampler.fuzzy_sets(2, 6, s);
      const auto flipped = with_replaced(sets, 1, complement(sets[1]));
      worst = std::max(worst, std::abs(eval_dp(no, flipped) - eval_dp(all, sets)));
    }
    reports.push_back(finish("negation:no_vs_all", 100, worst, kExactTolerance));
  }
  if (wanted("averaging")) reports.push_back(check_averaging_identity(100, 2000, seed));
  if (wanted("ruspini")) {
    if (options.ruspini_partition) {
      reports.push_back(tagged(check_ruspini(*options.ruspini_partition, 100, 50, seed), "custom"));
    } else {
      const auto shapes = three_trapezoids();
      reports.push_back(tagged(check_ruspini(ruspini_partition(shapes, 1), 100, 50, seed), "unary"));
      reports.push_back(tagged(check_ruspini(ruspini_partition(shapes, 2), 100, 50, seed), "binary"));
    }
  }
  if (wanted("transposition")) {
    reports.push_back(tagged(check_transposition(standard_catalog("nearly_all"), 0, 1, 100, 6, seed), "nearly_all"));
    reports.push_back(tagged(check_transposition(about_twice(), 1, 2, 100, 6, seed), "about_twice_2_3"));
    reports.push_back(tagged(check_transposition(about_twice(), 0, 2, 100, 6, seed), "about_twice_1_3"));
  }
  if (wanted("fine_distinction")) {
    const MembershipShape linear = Trapezoid{0.0, 1.0, kInf, kInf};
    reports.push_back(check_fine_distinction(linear, 1, 100, 10, seed));
    reports.push_back(check_fine_distinction(linear, 2, 100, 10, seed));
  }
  if (wanted("projection")) {
    const auto binary = proportional_combinations();
    reports.push_back(tagged(check_projection_theorem(binary, 50, 8, seed), "binary_proportional"));
    const std::vector<BooleanCombination> conservative = {BooleanCombination::argument(2, 0),
                                                          BooleanCombination::atom({1, 1})};
    reports.push_back(tagged(check_projection_theorem(conservative, 50, 8, seed), "conservative"));
    reports.push_back(tagged(check_projection_theorem(about_twice().combinations(), 20, 6, seed), "ternary"));
  }
  if (wanted("monotonicity")) {
    reports.push_back(tagged(check_monotonicity(standard_catalog("nearly_all"), 1, 100, 8, seed), "nearly_all"));
    reports.push_back(tagged(check_monotonicity(catalog_with_value("at_least_k", 3), 0, 100, 8, seed), "at_least_3"));
    reports.push_back(
        tagged(check_monotonicity(about_sixty_percent_or_more(), 1, 100, 8, seed), "about_60%_or_more"));
    reports.push_back(tagged(check_monotonicity(standard_catalog("some"), 0, 100, 8, seed), "some_arg1"));
    reports.push_back(tagged(check_monotonicity(standard_catalog("some"), 1, 100, 8, seed), "some_arg2"));
  }
  if (wanted("variance")) reports.push_back(check_variance_decay(50, 1000, seed));
  if (wanted("golden")) reports.push_back(check_golden(options.goldens ? *options.goldens : default_goldens()));
  return reports;
}

}  // namespace faq
