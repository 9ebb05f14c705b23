// faquant: batch front end for the F^A quantification model.
//
//   faquant eval SPEC SET... [--method oracle|dp|mc|zadeh] [--mc-n N] [--seed S] [--partitions P] [--dump-spec]
//   faquant carddist SET
//   faquant converge SPEC PROFILE --sizes 50,100,500 [--mc-n N] [--seed S] [--partitions P]
//   faquant verify [--seed S] [--suite a,b] [--partition FILE] [--golden FILE]
//   faquant rank SPEC OBJECTS.csv [WEIGHTS]
//
// Exit codes: 0 ok, 1 property failure, 2 input error, 3 budget exceeded.
// A set or spec path of "-" reads stdin.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faq/errors.hpp"
#include "faq/exact.hpp"
#include "faq/limit.hpp"
#include "faq/monte_carlo.hpp"
#include "faq/properties.hpp"
#include "spec_io.hpp"

namespace {

using faq::cli::format_number;
using faq::cli::json;

enum Exit : int { kOk = 0, kPropertyFailure = 1, kInputError = 2, kBudget = 3 };

std::string quoted(const std::string& s) { return json(s).dump(); }

struct EvalArgs {
  std::string spec;
  std::vector<std::string> sets;
  std::string method = "dp";
  std::uint64_t mc_n = 100000;
  std::uint64_t seed = 0;
  std::size_t partitions = 1;
  bool dump_spec = false;
};

struct ConvergeArgs {
  std::string spec;
  std::string profile;
  std::vector<std::size_t> sizes;
  std::optional<std::uint64_t> mc_n;
  std::uint64_t seed = 0;
  std::size_t partitions = 1;
};

struct VerifyArgs {
  std::uint64_t seed = 1;
  std::vector<std::string> suites;
  std::string partition;
  std::string golden;
};

struct RankArgs {
  std::string spec;
  std::string objects;
  std::string weights;
};

std::vector<faq::FuzzySet> load_sets(const std::vector<std::string>& paths) {
  std::vector<faq::FuzzySet> sets;
  for (const auto& p : paths) sets.push_back(faq::cli::parse_fuzzy_set(faq::cli::load_json(p), p).set);
  return sets;
}

int cmd_eval(const EvalArgs& a) {
  const auto q = faq::cli::parse_quantifier(faq::cli::load_json(a.spec));
  if (a.dump_spec) {
    std::cout << faq::cli::quantifier_to_json(q).dump() << '\n';
    return kOk;
  }
  const auto sets = load_sets(a.sets);
  const auto limits = faq::EngineLimits::from_environment();
  std::ostringstream out;
  out << "{\"method\": " << quoted(a.method);
  if (a.method == "oracle") {
    out << ", \"value\": " << format_number(faq::oracle_eval(q, sets, limits));
  } else if (a.method == "dp") {
    out << ", \"value\": " << format_number(faq::eval_dp(q, sets, limits));
  } else if (a.method == "zadeh") {
    faq::require_arguments(q, sets);
    out << ", \"value\": " << format_number(faq::limit_eval(q, sets));
  } else {
    const auto est = faq::mc_eval(q, sets, faq::McConfig{a.mc_n, a.seed, a.partitions});
    out << ", \"value\": " << format_number(est.value) << ", \"stderr\": " << format_number(est.standard_error)
        << ", \"num_simulations\": " << est.num_simulations << ", \"seed\": " << est.seed
        << ", \"partitions\": " << est.partitions;
  }
  out << "}\n";
  std::cout << out.str();
  return kOk;
}

int cmd_carddist(const std::string& path) {
  const auto x = faq::cli::parse_fuzzy_set(faq::cli::load_json(path), path).set;
  const auto dist = faq::cardinality_distribution(x);
  std::ostringstream out;
  out << "j,probability\n";
  for (std::size_t j = 0; j < dist.size(); ++j) out << j << ',' << format_number(dist[j]) << '\n';
  std::cout << out.str();
  return kOk;
}

int cmd_converge(const ConvergeArgs& a) {
  const auto q = faq::cli::parse_quantifier(faq::cli::load_json(a.spec));
  const auto profile = faq::cli::parse_profile(faq::cli::load_json(a.profile));
  std::optional<faq::McConfig> mc;
  if (a.mc_n) mc = faq::McConfig{*a.mc_n, a.seed, a.partitions};
  const auto rows = faq::convergence_table(q, profile, a.sizes, mc, faq::EngineLimits::from_environment());
  std::ostringstream out;
  out << "m,exact,zadeh" << (mc ? ",mc,mc_stderr" : "") << ",abs_error\n";
  for (const auto& r : rows) {
    out << r.m << ',' << format_number(r.exact) << ',' << format_number(r.zadeh);
    if (r.mc) out << ',' << format_number(r.mc->value) << ',' << format_number(r.mc->standard_error);
    out << ',' << format_number(r.abs_error) << '\n';
  }
  std::cout << out.str();
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  faq::SuiteOptions options;
  if (!a.partition.empty()) options.ruspini_partition = faq::cli::parse_partition(faq::cli::load_json(a.partition));
  if (!a.golden.empty()) options.goldens = faq::cli::parse_goldens(faq::cli::load_json(a.golden));
  const auto reports = faq::run_suites(a.suites, a.seed, options);

  bool all_passed = true;
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << "  {\"id\": " << quoted(r.id) << ", \"instances\": " << r.instances
        << ", \"max_deviation\": " << format_number(r.max_deviation)
        << ", \"tolerance\": " << format_number(r.tolerance) << ", \"passed\": " << (r.passed ? "true" : "false")
        << ", \"detail\": " << quoted(r.detail) << '}' << (i + 1 < reports.size() ? "," : "") << '\n';
    if (!r.passed) {
      all_passed = false;
      std::cerr << "FAILED " << r.id << ": max deviation " << format_number(r.max_deviation) << " > "
                << format_number(r.tolerance) << (r.detail.empty() ? "" : " (" + r.detail + ")") << '\n';
    }
  }
  out << "]\n";
  std::cout << out.str();
  return all_passed ? kOk : kPropertyFailure;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::optional<double> to_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct RankObject {
  std::string id;
  std::vector<double> criteria;
};

// Rows are "id,c1,...,cm"; a first row with a non-numeric criterion is a header.
std::vector<RankObject> parse_objects(const std::string& text, const std::string& origin) {
  std::vector<RankObject> objects;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(trim(cell));
    const std::string where = origin + ":" + std::to_string(line_no);
    if (cells.size() < 2) throw faq::InvalidArgument(where + ": expected an id and at least one criterion");
    RankObject obj{cells[0], {}};
    bool numeric = true;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      const auto v = to_number(cells[i]);
      if (!v) {
        numeric = false;
        break;
      }
      obj.criteria.push_back(*v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw faq::InvalidArgument(where + ": criteria must be numbers");
    }
    first = false;
    if (!objects.empty() && obj.criteria.size() != objects.front().criteria.size()) {
      throw faq::InvalidArgument(where + ": ragged row with " + std::to_string(obj.criteria.size()) +
                                 " criteria, expected " + std::to_string(objects.front().criteria.size()));
    }
    objects.push_back(std::move(obj));
  }
  if (objects.empty()) throw faq::InvalidArgument(origin + ": no objects");
  return objects;
}

int cmd_rank(const RankArgs& a) {
  const auto q = faq::cli::parse_quantifier(faq::cli::load_json(a.spec));
  const auto objects = parse_objects(faq::cli::read_text(a.objects), a.objects);
  std::optional<faq::FuzzySet> weights;
  if (!a.weights.empty()) weights = faq::cli::parse_fuzzy_set(faq::cli::load_json(a.weights), a.weights).set;

  if (q.arity() == 2 && !weights) throw faq::InvalidArgument("rank: a binary quantifier needs a weights file");
  if (q.arity() == 1 && weights) throw faq::InvalidArgument("rank: weights given for a unary quantifier");
  if (q.arity() > 2) throw faq::InvalidArgument("rank: quantifier must be unary or binary");
  if (weights && weights->size() != objects.front().criteria.size()) {
    throw faq::InvalidArgument("rank: " + std::to_string(weights->size()) + " weights for " +
                               std::to_string(objects.front().criteria.size()) + " criteria");
  }

  const auto limits = faq::EngineLimits::from_environment();
  std::vector<double> scores;
  for (const auto& obj : objects) {
    faq::FuzzySet x = [&] {
      try {
        return faq::FuzzySet(obj.criteria);
      } catch (const faq::InvalidArgument& e) {
        throw faq::InvalidArgument("rank: object '" + obj.id + "': " + e.what());
      }
    }();
    std::vector<faq::FuzzySet> args;
    if (weights) args.push_back(*weights);
    args.push_back(std::move(x));
    scores.push_back(faq::eval_dp(q, args, limits));
  }

  std::vector<std::size_t> order(objects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return scores[l] > scores[r]; });

  std::ostringstream out;
  out << "id,score,rank\n";
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out << objects[order[pos]].id << ',' << format_number(scores[order[pos]]) << ',' << pos + 1 << '\n';
  }
  std::cout << out.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy quantification by expected crisp representatives"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a quantified expression");
  eval_cmd->add_option("spec", eval.spec, "Quantifier spec (JSON)")->required();
  eval_cmd->add_option("sets", eval.sets, "One fuzzy set file per argument");
  eval_cmd->add_option("--method", eval.method, "oracle, dp, mc or zadeh")
      ->check(CLI::IsMember({"oracle", "dp", "mc", "zadeh"}));
  eval_cmd->add_option("--mc-n", eval.mc_n, "Monte Carlo simulations")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval.seed, "Monte Carlo seed");
  eval_cmd->add_option("--partitions", eval.partitions, "Monte Carlo partitions")->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--dump-spec", eval.dump_spec, "Print the canonical spec and exit");

  std::string carddist_set;
  auto* carddist_cmd = app.add_subcommand("carddist", "Cardinality distribution of a fuzzy set (CSV)");
  carddist_cmd->add_option("set", carddist_set, "Fuzzy set file")->required();

  ConvergeArgs converge;
  std::uint64_t converge_mc_n = 0;
  auto* converge_cmd = app.add_subcommand("converge", "Exact versus limit values over growing m (CSV)");
  converge_cmd->add_option("spec", converge.spec, "Quantifier spec (JSON)")->required();
  converge_cmd->add_option("profile", converge.profile, "Membership profile (JSON)")->required();
  converge_cmd->add_option("--sizes", converge.sizes, "Comma-separated referential sizes")
      ->required()
      ->delimiter(',');
  auto* converge_mc = converge_cmd->add_option("--mc-n", converge_mc_n, "Add a Monte Carlo column")
                          ->check(CLI::PositiveNumber);
  converge_cmd->add_option("--seed", converge.seed, "Monte Carlo seed");
  converge_cmd->add_option("--partitions", converge.partitions, "Monte Carlo partitions")
      ->check(CLI::PositiveNumber);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property suite (JSON report)");
  verify_cmd->add_option("--seed", verify.seed, "Sampling seed");
  verify_cmd->add_option("--suite", verify.suites, "Suites to run (default: all)")->delimiter(',');
  verify_cmd->add_option("--partition", verify.partition, "Ruspini partition file for the ruspini suite");
  verify_cmd->add_option("--golden", verify.golden, "Golden values file for the golden suite");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank objects by a quantified criterion (CSV)");
  rank_cmd->add_option("spec", rank.spec, "Quantifier spec (JSON)")->required();
  rank_cmd->add_option("objects", rank.objects, "CSV rows id,c1,...,cm")->required();
  rank_cmd->add_option("weights", rank.weights, "Fuzzy set of criterion weights (binary quantifiers)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*eval_cmd) {
      if (!eval.dump_spec && eval.sets.empty()) throw faq::InvalidArgument("eval: no fuzzy set files given");
      return cmd_eval(eval);
    }
    if (*carddist_cmd) return cmd_carddist(carddist_set);
    if (*converge_cmd) {
      if (*converge_mc) converge.mc_n = converge_mc_n;
      return cmd_converge(converge);
    }
    if (*verify_cmd) return cmd_verify(verify);
    if (*rank_cmd) return cmd_rank(rank);
  } catch (const faq::BudgetExceeded& e) {
    std::cerr << "faquant: budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::bad_alloc&) {
    std::cerr << "faquant: budget exceeded: out of memory\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "faquant: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
