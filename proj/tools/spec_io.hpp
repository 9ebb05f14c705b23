#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "faq/fuzzy_set.hpp"
#include "faq/limit.hpp"
#include "faq/properties.hpp"
#include "faq/quantifier.hpp"
#include "faq/shape.hpp"

namespace faq::cli {

using nlohmann::json;

/// Reads a whole file, or stdin for "-". Throws InvalidArgument when unreadable.
std::string read_text(const std::string& path);
/// Parses JSON text; syntax errors become InvalidArgument carrying nlohmann's line/column message.
json parse_json(const std::string& text, const std::string& origin);
json load_json(const std::string& path);

/// Shape objects: {"type": "trapezoid"|"s"|"table"|"piecewise"|"interval", ...}; null stands for ±∞.
MembershipShape parse_shape(const json& j, const std::string& where);
json shape_to_json(const MembershipShape& shape);

/// Quantifier specs of kind absolute, unary_prop, binary_prop, binary_conservative, general or catalog.
SemiFuzzyQuantifier parse_quantifier(const json& j);
/// Canonical spec of kind "general"; parse_quantifier(quantifier_to_json(q)) == q.
json quantifier_to_json(const SemiFuzzyQuantifier& q);

struct LabeledSet {
  FuzzySet set;
  std::vector<std::string> labels;
};

/// A flat array of degrees, or {"memberships": [...], "labels": [...]}.
LabeledSet parse_fuzzy_set(const json& j, const std::string& where);

/// A flat array (one pattern), an array of arrays, or {"patterns": [[...], ...]}.
MembershipProfile parse_profile(const json& j);

/// An array of shapes or {"arity": 1|2, "shapes": [...]}; validated as a Ruspini partition.
std::vector<SemiFuzzyQuantifier> parse_partition(const json& j);

/// An array of {"name", "expected", "tolerance"}.
std::vector<GoldenValue> parse_goldens(const json& j);

/// %.17g; non-finite values print as null.
std::string format_number(double v);

}  // namespace faq::cli
