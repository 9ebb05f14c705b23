#include "spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "faq/catalog.hpp"
#include "faq/errors.hpp"

namespace faq::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw InvalidArgument(where + ": " + msg); }

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

// null maps to the given infinity.
double number_or_inf(const json& j, const std::string& where, double inf) {
  return j.is_null() ? inf : number(j, where);
}

double optional_number(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return number(j.at(key), where + "." + key);
}

std::size_t index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::size_t optional_index(const json& j, const std::string& key, std::size_t fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return index(j.at(key), where + "." + key);
}

bool optional_bool(const json& j, const std::string& key, bool fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(where + "." + key, "expected true or false");
  return j.at(key).get<bool>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

CardinalityFunction parse_q(const json& j, const std::string& where) {
  const std::string form = text(field(j, "form", where), where + ".form");
  if (form == "table") {
    TableForm t;
    t.extent = index(field(j, "extent", where), where + ".extent");
    t.values = numbers(field(j, "values", where), where + ".values");
    return t;
  }
  const MembershipShape shape = parse_shape(field(j, "shape", where), where + ".shape");
  if (form == "count") return CountForm{shape, optional_index(j, "axis", 0, where)};
  if (form == "proportion") return ProportionForm{shape, optional_index(j, "axis", 0, where)};
  if (form == "ratio") {
    return RatioForm{shape, optional_index(j, "numerator_axis", 0, where), optional_index(j, "rest_axis", 1, where),
                     optional_number(j, "empty_value", 1.0, where)};
  }
  fail(where + ".form", "unknown form \"" + form + "\" (count, proportion, ratio, table)");
}

json q_to_json(const CardinalityFunction& q) {
  return std::visit(
      [](const auto& f) -> json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, CountForm>) {
          return {{"form", "count"}, {"axis", f.axis}, {"shape", shape_to_json(f.shape)}};
        } else if constexpr (std::is_same_v<F, ProportionForm>) {
          return {{"form", "proportion"}, {"axis", f.axis}, {"shape", shape_to_json(f.shape)}};
        } else if constexpr (std::is_same_v<F, RatioForm>) {
          return {{"form", "ratio"},
                  {"numerator_axis", f.numerator_axis},
                  {"rest_axis", f.rest_axis},
                  {"empty_value", f.empty_value},
                  {"shape", shape_to_json(f.shape)}};
        } else {
          return {{"form", "table"}, {"extent", f.extent}, {"values", f.values}};
        }
      },
      q);
}

BooleanCombination parse_combination(const json& j, std::size_t arity, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a truth table array of 0/1");
  std::vector<bool> table;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& v = j[i];
    if (v.is_boolean()) {
      table.push_back(v.get<bool>());
    } else if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) {
      table.push_back(v.get<int>() == 1);
    } else {
      fail(where + "[" + std::to_string(i) + "]", "truth table entries must be 0 or 1");
    }
  }
  try {
    return BooleanCombination(arity, std::move(table));
  } catch (const InvalidArgument& e) {
    fail(where, e.what());
  }
}

}  // namespace

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(origin + ": " + e.what());
  }
}

json load_json(const std::string& path) { return parse_json(read_text(path), path); }

MembershipShape parse_shape(const json& j, const std::string& where) {
  const std::string type = text(field(j, "type", where), where + ".type");
  MembershipShape shape;
  if (type == "trapezoid") {
    shape = Trapezoid{number_or_inf(field(j, "a", where), where + ".a", -kInf),
                      number_or_inf(field(j, "b", where), where + ".b", -kInf),
                      number_or_inf(field(j, "c", where), where + ".c", kInf),
                      number_or_inf(field(j, "d", where), where + ".d", kInf)};
  } else if (type == "s") {
    shape = SShape{number(field(j, "alpha", where), where + ".alpha"),
                   number(field(j, "gamma", where), where + ".gamma")};
  } else if (type == "table") {
    shape = Tabulated{numbers(field(j, "values", where), where + ".values")};
  } else if (type == "piecewise") {
    const json& pts = field(j, "points", where);
    if (!pts.is_array()) fail(where + ".points", "expected an array of [x, y] pairs");
    PiecewiseLinear p;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto xy = numbers(pts[i], where + ".points[" + std::to_string(i) + "]");
      if (xy.size() != 2) fail(where + ".points[" + std::to_string(i) + "]", "expected [x, y]");
      p.points.emplace_back(xy[0], xy[1]);
    }
    shape = std::move(p);
  } else if (type == "interval") {
    Interval iv;
    if (j.contains("lo")) iv.lo = number_or_inf(j.at("lo"), where + ".lo", -kInf);
    if (j.contains("hi")) iv.hi = number_or_inf(j.at("hi"), where + ".hi", kInf);
    iv.lo_closed = optional_bool(j, "lo_closed", true, where);
    iv.hi_closed = optional_bool(j, "hi_closed", true, where);
    shape = iv;
  } else {
    fail(where + ".type", "unknown shape type \"" + type + "\" (trapezoid, s, table, piecewise, interval)");
  }
  try {
    validate(shape);
  } catch (const InvalidArgument& e) {
    fail(where, e.what());
  }
  return shape;
}

json shape_to_json(const MembershipShape& shape) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Trapezoid>) {
          return {{"type", "trapezoid"},
                  {"a", finite_or_null(s.a)},
                  {"b", finite_or_null(s.b)},
                  {"c", finite_or_null(s.c)},
                  {"d", finite_or_null(s.d)}};
        } else if constexpr (std::is_same_v<S, SShape>) {
          return {{"type", "s"}, {"alpha", s.alpha}, {"gamma", s.gamma}};
        } else if constexpr (std::is_same_v<S, Tabulated>) {
          return {{"type", "table"}, {"values", s.values}};
        } else if constexpr (std::is_same_v<S, PiecewiseLinear>) {
          json pts = json::array();
          for (const auto& [x, y] : s.points) pts.push_back({x, y});
          return {{"type", "piecewise"}, {"points", pts}};
        } else {
          return {{"type", "interval"},
                  {"lo", finite_or_null(s.lo)},
                  {"hi", finite_or_null(s.hi)},
                  {"lo_closed", s.lo_closed},
                  {"hi_closed", s.hi_closed}};
        }
      },
      shape);
}

SemiFuzzyQuantifier parse_quantifier(const json& j) {
  const std::string where = "spec";
  const std::string kind = text(field(j, "kind", where), where + ".kind");
  try {
    if (kind == "absolute") {
      const std::size_t arity = optional_index(j, "arity", 1, where);
      if (arity != 1 && arity != 2) fail(where + ".arity", "absolute quantifiers are unary or binary");
      const auto shape = parse_shape(field(j, "shape", where), where + ".shape");
      const auto counted = arity == 1 ? BooleanCombination::argument(1, 0) : BooleanCombination::atom({1, 1});
      return SemiFuzzyQuantifier(arity, {counted}, CountForm{shape, 0});
    }
    if (kind == "unary_prop") {
      CatalogParams p;
      p.shape = parse_shape(field(j, "shape", where), where + ".shape");
      return standard_catalog("unary_prop", p);
    }
    if (kind == "binary_prop") {
      CatalogParams p;
      p.shape = parse_shape(field(j, "shape", where), where + ".shape");
      p.empty_restrictor_value = optional_number(j, "empty_restrictor_value", 1.0, where);
      return standard_catalog("binary_prop", p);
    }
    if (kind == "binary_conservative") {
      // Axis 0 counts Y1∩Y2 and axis 1 counts Y1∩¬Y2.
      return SemiFuzzyQuantifier(2, proportional_combinations(), parse_q(field(j, "q", where), where + ".q"));
    }
    if (kind == "general") {
      const std::size_t arity = index(field(j, "arity", where), where + ".arity");
      const json& combos = field(j, "combinations", where);
      if (!combos.is_array()) fail(where + ".combinations", "expected an array of truth tables");
      std::vector<BooleanCombination> combinations;
      for (std::size_t i = 0; i < combos.size(); ++i) {
        combinations.push_back(
            parse_combination(combos[i], arity, where + ".combinations[" + std::to_string(i) + "]"));
      }
      return SemiFuzzyQuantifier(arity, std::move(combinations), parse_q(field(j, "q", where), where + ".q"),
                                 optional_bool(j, "negated", false, where));
    }
    if (kind == "catalog") {
      CatalogParams p;
      p.arity = optional_index(j, "arity", 0, where);
      if (j.contains("values")) p.values = numbers(j.at("values"), where + ".values");
      if (j.contains("shape")) p.shape = parse_shape(j.at("shape"), where + ".shape");
      p.empty_restrictor_value = optional_number(j, "empty_restrictor_value", 1.0, where);
      return standard_catalog(text(field(j, "name", where), where + ".name"), p);
    }
  } catch (const json::exception& e) {
    fail(where, e.what());
  }
  fail(where + ".kind", "unknown kind \"" + kind +
                            "\" (absolute, unary_prop, binary_prop, binary_conservative, general, catalog)");
}

json quantifier_to_json(const SemiFuzzyQuantifier& q) {
  json combos = json::array();
  for (const auto& c : q.combinations()) {
    json table = json::array();
    for (bool b : c.truth_table()) table.push_back(b ? 1 : 0);
    combos.push_back(table);
  }
  return {{"kind", "general"},
          {"arity", q.arity()},
          {"combinations", combos},
          {"q", q_to_json(q.cardinality_function())},
          {"negated", q.negated()}};
}

LabeledSet parse_fuzzy_set(const json& j, const std::string& where) {
  std::vector<double> mu;
  std::vector<std::string> labels;
  if (j.is_array()) {
    mu = numbers(j, where);
  } else if (j.is_object()) {
    mu = numbers(field(j, "memberships", where), where + ".memberships");
    if (j.contains("labels")) {
      const json& l = j.at("labels");
      if (!l.is_array()) fail(where + ".labels", "expected an array of strings");
      for (std::size_t i = 0; i < l.size(); ++i) labels.push_back(text(l[i], where + ".labels[" + std::to_string(i) + "]"));
      if (labels.size() != mu.size()) {
        fail(where + ".labels", "has " + std::to_string(labels.size()) + " entries for " +
                                    std::to_string(mu.size()) + " memberships");
      }
    }
  } else {
    fail(where, "expected an array of degrees or an object with \"memberships\"");
  }
  try {
    return {FuzzySet(std::move(mu)), std::move(labels)};
  } catch (const InvalidArgument& e) {
    fail(where, e.what());
  }
}

MembershipProfile parse_profile(const json& j) {
  const std::string where = "profile";
  const json& body = j.is_object() ? field(j, "patterns", where) : j;
  if (!body.is_array() || body.empty()) fail(where, "expected a non-empty array");
  MembershipProfile profile;
  if (body[0].is_array()) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      profile.patterns.push_back(numbers(body[i], where + "[" + std::to_string(i) + "]"));
    }
  } else {
    profile.patterns.push_back(numbers(body, where));
  }
  for (std::size_t i = 0; i < profile.patterns.size(); ++i) {
    const auto& p = profile.patterns[i];
    if (p.empty()) fail(where + "[" + std::to_string(i) + "]", "pattern must not be empty");
    for (double d : p) {
      if (!(d >= 0.0 && d <= 1.0)) fail(where + "[" + std::to_string(i) + "]", "degrees must lie in [0,1]");
    }
  }
  return profile;
}

std::vector<SemiFuzzyQuantifier> parse_partition(const json& j) {
  const std::string where = "partition";
  std::size_t arity = 1;
  const json* shapes = &j;
  if (j.is_object()) {
    arity = optional_index(j, "arity", 1, where);
    shapes = &field(j, "shapes", where);
  }
  if (!shapes->is_array() || shapes->empty()) fail(where, "expected a non-empty array of shapes");
  std::vector<MembershipShape> parsed;
  for (std::size_t i = 0; i < shapes->size(); ++i) {
    parsed.push_back(parse_shape((*shapes)[i], where + "[" + std::to_string(i) + "]"));
  }
  try {
    return ruspini_partition(parsed, arity);
  } catch (const InvalidArgument& e) {
    fail(where, e.what());
  }
}

std::vector<GoldenValue> parse_goldens(const json& j) {
  const std::string where = "golden";
  if (!j.is_array()) fail(where, "expected an array of {name, expected, tolerance}");
  std::vector<GoldenValue> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    GoldenValue g;
    g.name = text(field(j[i], "name", at), at + ".name");
    g.expected = number(field(j[i], "expected", at), at + ".expected");
    g.tolerance = number(field(j[i], "tolerance", at), at + ".tolerance");
    if (!(g.tolerance > 0.0)) fail(at + ".tolerance", "must be positive");
    out.push_back(std::move(g));
  }
  return out;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace faq::cli
