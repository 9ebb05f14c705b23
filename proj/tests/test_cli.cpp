#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "faq/catalog.hpp"
#include "faq/errors.hpp"
#include "spec_io.hpp"

#ifndef FAQUANT_PATH
#error "FAQUANT_PATH must name the faquant executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() / ("faquant_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }

  Run run(const std::string& args, const std::string& env = {}) const {
    const std::string cmd = env + " '" + std::string(FAQUANT_PATH) + "' " + args + " 2>" + (dir_ / "stderr").string();
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string stderr_text() const {
    std::ifstream in(dir_ / "stderr");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kNearlyAll = R"({"kind": "catalog", "name": "nearly_all"})";
const char* kExample2 = R"({"kind": "unary_prop", "shape": {"type": "trapezoid", "a": 0.5, "b": 0.6, "c": null, "d": null}})";
const char* kLinear = R"({"kind": "unary_prop", "shape": {"type": "trapezoid", "a": 0, "b": 1, "c": null, "d": null}})";

}  // namespace

TEST_CASE("cli eval") {
  Workspace ws;
  const auto spec = ws.write("nearly_all.json", kNearlyAll);
  const auto big = ws.write("big.json", "[0.8, 0.9, 1, 0.2]");
  const auto expensive = ws.write("expensive.json", R"({"memberships": [1, 0.8, 0.3, 0.1], "labels": ["h1", "h2", "h3", "h4"]})");

  SUBCASE("Example 1 by every exact method") {
    for (const char* method : {"dp", "oracle"}) {
      const auto r = ws.run("eval " + spec + " " + big + " " + expensive + " --method " + method);
      REQUIRE(r.code == 0);
      const auto j = json::parse(r.out);
      CHECK(j["method"] == method);
      CHECK(j["value"].get<double>() == doctest::Approx(0.346).epsilon(0.0005 / 0.346));
    }
    const auto zadeh = ws.run("eval " + spec + " " + big + " " + expensive + " --method zadeh");
    REQUIRE(zadeh.code == 0);
    CHECK(json::parse(zadeh.out)["value"].get<double>() == doctest::Approx(2.0 * 1.84 / 2.9 - 1.0));
  }
  SUBCASE("17 significant digits") {
    const auto r = ws.run("eval " + spec + " " + big + " " + expensive);
    CHECK(r.out.find("0.34592533333333") != std::string::npos);
  }
  SUBCASE("stdin") {
    const auto r = ws.run("eval " + spec + " - " + expensive + " < " + big);
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(0.3459253333));
  }
  SUBCASE("crisp inputs give Q for every exact method") {
    const auto y1 = ws.write("y1.json", "[1, 1, 1, 0]");
    const auto y2 = ws.write("y2.json", "[1, 1, 0, 1]");
    for (const char* method : {"dp", "oracle", "zadeh"}) {
      const auto r = ws.run("eval " + spec + " " + y1 + " " + y2 + " --method " + method);
      REQUIRE(r.code == 0);
      CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
  }
  SUBCASE("Monte Carlo output is reproducible") {
    const std::string args = "eval " + spec + " " + big + " " + expensive + " --method mc --mc-n 100000 --seed 7";
    const auto a = ws.run(args);
    const auto b = ws.run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(j["seed"] == 7);
    CHECK(j["num_simulations"] == 100000);
    CHECK(std::abs(j["value"].get<double>() - 0.3459253333) <= 4.0 * j["stderr"].get<double>());
    const auto four = ws.run(args + " --partitions 4");
    REQUIRE(four.code == 0);
    CHECK(json::parse(four.out)["partitions"] == 4);
  }
  SUBCASE("input errors exit 2") {
    CHECK(ws.run("eval " + spec + " " + big).code == 2);
    CHECK(ws.run("eval " + spec + " " + big + " " + ws.write("short.json", "[0.5]")).code == 2);
    CHECK(ws.run("eval " + spec + " " + big + " " + ws.write("bad.json", "[0.5, 1.5, 0, 0]")).code == 2);
    CHECK(ws.run("eval " + spec + " " + big + " " + ws.write("syntax.json", "[0.5,\n 0.2,,]")).code == 2);
    CHECK(ws.stderr_text().find("line 2") != std::string::npos);
    CHECK(ws.run("eval " + spec + " " + big + " missing.json").code == 2);
    CHECK(ws.run("eval " + spec + " " + big + " " + expensive + " --method magic").code == 2);
    CHECK(ws.run("eval " + ws.write("s.json", R"({"kind": "unary_prop", "shape": {"type": "s", "alpha": 1, "gamma": 0}})") +
                 " " + big)
              .code == 2);
    CHECK(ws.stderr_text().find("spec.shape") != std::string::npos);
    CHECK(ws.run("eval " + ws.write("k.json", R"({"kind": "weird"})") + " " + big).code == 2);
    CHECK(ws.run("bogus").code == 2);
    CHECK(ws.run("").code == 2);
    CHECK(ws.run("eval " + ws.write("lab.json", R"({"memberships": [0.5], "labels": ["a", "b"]})") + " " + big).code == 2);
  }
  SUBCASE("budgets exit 3") {
    std::string wide = "[";
    for (int i = 0; i < 13; ++i) wide += (i ? ", 0.5" : "0.5");
    wide += "]";
    const auto w = ws.write("wide.json", wide);
    const auto r = ws.run("eval " + spec + " " + w + " " + w + " --method oracle");
    CHECK(r.code == 3);
    CHECK(ws.stderr_text().find("budget") != std::string::npos);
    const auto twice = ws.write("twice.json", R"({"kind": "general", "arity": 3,
      "combinations": [[0,0,0,1,0,0,0,1], [0,0,0,0,0,1,0,1]],
      "q": {"form": "ratio", "shape": {"type": "trapezoid", "a": 0.5, "b": 0.66, "c": 0.67, "d": 0.8}, "empty_value": 0}})");
    CHECK(ws.run("eval " + twice + " " + w + " " + w + " " + w).code == 0);
    const auto capped = ws.run("eval " + twice + " " + w + " " + w + " " + w, "FA_QUANT_MEM_CAP=64");
    CHECK(capped.code == 3);
    CHECK(ws.stderr_text().find("FA_QUANT_MEM_CAP") != std::string::npos);
  }
}

TEST_CASE("cli spec round trip") {
  Workspace ws;
  const std::vector<std::string> specs = {
      kNearlyAll,
      kExample2,
      R"({"kind": "absolute", "arity": 2, "shape": {"type": "trapezoid", "a": 6, "b": 8, "c": 12, "d": 14}})",
      R"({"kind": "binary_prop", "shape": {"type": "s", "alpha": 0.4, "gamma": 0.6}, "empty_restrictor_value": 0.25})",
      R"({"kind": "binary_conservative", "q": {"form": "table", "extent": 3, "values": [0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]}})",
      R"({"kind": "general", "arity": 1, "combinations": [[0, 1]], "q": {"form": "count", "shape": {"type": "interval", "lo": 2, "hi": null, "lo_closed": false}}, "negated": true})",
      R"({"kind": "unary_prop", "shape": {"type": "piecewise", "points": [[0, 0], [0.5, 1], [1, 0.25]]}})",
      R"({"kind": "unary_prop", "shape": {"type": "table", "values": [0, 0.3, 1]}})",
      R"({"kind": "catalog", "name": "exactly_k", "arity": 2, "values": [3]})",
      R"({"kind": "catalog", "name": "about_k", "shape": {"type": "trapezoid", "a": null, "b": null, "c": 2, "d": 4}})",
  };
  for (const auto& text : specs) {
    CAPTURE(text);
    const auto q = faq::cli::parse_quantifier(json::parse(text));
    const auto dumped = faq::cli::quantifier_to_json(q);
    CHECK(faq::cli::parse_quantifier(dumped) == q);
    CHECK(faq::cli::parse_quantifier(json::parse(dumped.dump())) == q);

    const auto r = ws.run("eval " + ws.write("spec.json", text) + " --dump-spec");
    REQUIRE(r.code == 0);
    CHECK(faq::cli::parse_quantifier(json::parse(r.out)) == q);
    const auto again = ws.run("eval " + ws.write("dumped.json", r.out) + " --dump-spec");
    CHECK(again.out == r.out);
  }
}

TEST_CASE("cli parser diagnostics") {
  using faq::InvalidArgument;
  CHECK_THROWS_AS(faq::cli::parse_quantifier(json::parse(R"({"kind": "general", "arity": 2, "combinations": [[0, 1]], "q": {"form": "count", "shape": {"type": "interval"}}})")),
                  InvalidArgument);
  CHECK_THROWS_WITH_AS(faq::cli::parse_quantifier(json::parse(R"({"kind": "unary_prop", "shape": {"type": "trapezoid", "a": 0, "b": "x", "c": 1, "d": 2}})")),
                       doctest::Contains("spec.shape.b"), InvalidArgument);
  CHECK_THROWS_WITH_AS(faq::cli::parse_quantifier(json::parse(R"({"kind": "binary_conservative", "q": {"form": "ratio"}})")),
                       doctest::Contains("spec.q"), InvalidArgument);
  CHECK_THROWS_AS(faq::cli::parse_fuzzy_set(json::parse("[]"), "x"), InvalidArgument);
  CHECK_THROWS_AS(faq::cli::parse_fuzzy_set(json::parse("3"), "x"), InvalidArgument);
  CHECK_THROWS_AS(faq::cli::parse_profile(json::parse("[[0.5], [2]]")), InvalidArgument);
  CHECK(faq::cli::parse_profile(json::parse(R"({"patterns": [[0.5], [1, 0]]})")).patterns.size() == 2);
  CHECK_THROWS_AS(faq::cli::parse_partition(json::parse(R"([{"type": "trapezoid", "a": 0, "b": 0.5, "c": 0.6, "d": 1}])")),
                  InvalidArgument);
  CHECK_THROWS_AS(faq::cli::parse_goldens(json::parse(R"([{"name": "example1", "expected": 0.3}])")), InvalidArgument);
  CHECK(faq::cli::format_number(0.1) == "0.10000000000000001");
  CHECK(faq::cli::format_number(1.0 / 0.0) == "null");
}

TEST_CASE("cli carddist") {
  Workspace ws;
  const auto half = ws.run("carddist " + ws.write("h.json", "[0.5, 0.5]"));
  REQUIRE(half.code == 0);
  const auto rows = csv(half.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"j", "probability"});
  CHECK(std::stod(rows[1][1]) == 0.25);
  CHECK(std::stod(rows[2][1]) == 0.5);
  CHECK(std::stod(rows[3][1]) == 0.25);

  const auto crisp = csv(ws.run("carddist " + ws.write("c.json", "[1, 1, 0]")).out);
  CHECK(std::stod(crisp[3][1]) == 1.0);
  CHECK(std::stod(crisp[1][1]) == 0.0);

  const auto big = csv(ws.run("carddist " + ws.write("b.json", "[0.8, 0.9, 1, 0.2]")).out);
  REQUIRE(big.size() == 6);
  CHECK(big[1][1] == "0");
  double total = 0.0;
  for (std::size_t i = 1; i < big.size(); ++i) total += std::stod(big[i][1]);
  CHECK(std::abs(total - 1.0) <= 1e-10);

  CHECK(ws.run("carddist " + ws.write("e.json", "[]")).code == 2);
}

TEST_CASE("cli converge") {
  Workspace ws;
  const auto spec = ws.write("spec.json", kExample2);
  const auto half = ws.write("half.json", "[0.5]");
  const auto r = ws.run("converge " + spec + " " + half + " --sizes 50,100,500");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"m", "exact", "zadeh", "abs_error"});
  CHECK(std::stod(rows[2][1]) == doctest::Approx(0.195).epsilon(0.0005 / 0.195));
  CHECK(std::stod(rows[3][1]) == doctest::Approx(0.089).epsilon(0.0005 / 0.089));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == "0");

  const auto decreasing = csv(ws.run("converge " + spec + " " + half + " --sizes 50,100,200,500,1000,2000").out);
  for (std::size_t i = 2; i < decreasing.size(); ++i) CHECK(std::stod(decreasing[i][3]) < std::stod(decreasing[i - 1][3]));

  const auto crisp = csv(ws.run("converge " + spec + " " + ws.write("crisp.json", "[1, 0]") + " --sizes 10,50,100").out);
  for (std::size_t i = 1; i < crisp.size(); ++i) CHECK(std::stod(crisp[i][3]) == 0.0);

  const auto with_mc = ws.run("converge " + spec + " " + half + " --sizes 50 --mc-n 10000 --seed 3");
  REQUIRE(with_mc.code == 0);
  CHECK(csv(with_mc.out)[0] == std::vector<std::string>{"m", "exact", "zadeh", "mc", "mc_stderr", "abs_error"});

  CHECK(ws.run("converge " + spec + " " + half).code == 2);
  CHECK(ws.run("converge " + ws.write("abs.json", R"({"kind": "catalog", "name": "exists"})") + " " + half + " --sizes 5")
            .code == 2);
  CHECK(ws.run("converge " + ws.write("abs2.json", R"({"kind": "absolute", "shape": {"type": "interval", "lo": 1}})") +
               " " + half + " --sizes 5")
            .code == 2);
  const auto general = ws.write("g.json", R"({"kind": "general", "arity": 2, "combinations": [[0,0,0,1],[0,1,0,0],[0,0,1,0]],
      "q": {"form": "ratio", "shape": {"type": "trapezoid", "a": 0, "b": 1, "c": null, "d": null}}})");
  CHECK(ws.run("converge " + general + " " + ws.write("p2.json", "[[0.5], [0.5]]") + " --sizes 3000",
               "FA_QUANT_MEM_CAP=1000000")
            .code == 3);
}

TEST_CASE("cli verify") {
  Workspace ws;
  const auto all = ws.run("verify --seed 5");
  CHECK(all.code == 0);
  const auto reports = json::parse(all.out);
  REQUIRE(reports.is_array());
  CHECK(reports.size() > 20);
  for (const auto& r : reports) CHECK(r["passed"] == true);

  const auto golden = ws.run("verify --suite golden");
  CHECK(golden.code == 0);
  CHECK(json::parse(golden.out).size() == 1);

  const auto corrupted = ws.write("golden.json", R"([{"name": "example1", "expected": 0.5, "tolerance": 0.0005}])");
  const auto bad = ws.run("verify --suite golden --golden " + corrupted);
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)[0]["passed"] == false);
  CHECK(ws.stderr_text().find("FAILED golden") != std::string::npos);

  const auto partition = ws.write("part.json", R"([{"type": "trapezoid", "a": null, "b": null, "c": 0.4, "d": 0.6},
                                                   {"type": "trapezoid", "a": 0.4, "b": 0.6, "c": null, "d": null}])");
  CHECK(ws.run("verify --suite ruspini --partition " + partition).code == 0);
  const auto invalid = ws.write("invalid.json", R"([{"type": "trapezoid", "a": null, "b": null, "c": 0.4, "d": 0.6}])");
  CHECK(ws.run("verify --suite ruspini --partition " + invalid).code == 2);
  CHECK(ws.run("verify --suite nonsense").code == 2);
}

TEST_CASE("cli rank") {
  Workspace ws;
  const auto linear = ws.write("linear.json", kLinear);

  SUBCASE("ties keep input order") {
    const auto r = ws.run("rank " + linear + " " + ws.write("o.csv", "id,c1,c2\nA,0.4,0.6\nB,0.4,0.6\n"));
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"id", "score", "rank"});
    CHECK(rows[1][0] == "A");
    CHECK(rows[2][0] == "B");
    CHECK(rows[1][1] == rows[2][1]);
    CHECK(rows[1][2] == "1");
    CHECK(rows[2][2] == "2");
  }
  SUBCASE("unary linear h ranks by mean") {
    const auto rows = csv(ws.run("rank " + linear + " " + ws.write("o.csv", "a,0.1,0.2,0.3\nb,0.9,0.8,0.7\nc,0.5,0.5,0.6\n")).out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][0] == "b");
    CHECK(rows[2][0] == "c");
    CHECK(rows[3][0] == "a");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("dominating object scores strictly higher") {
    const auto spec = ws.write("bp.json", R"({"kind": "binary_prop", "shape": {"type": "s", "alpha": 0, "gamma": 1}})");
    const auto weights = ws.write("w.json", "[0.9, 0.3, 0.6]");
    const auto rows =
        csv(ws.run("rank " + spec + " " + ws.write("o.csv", "low,0.5,0.4,0.7\nhigh,0.5,0.45,0.7\n") + " " + weights).out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "high");
    CHECK(std::stod(rows[1][1]) > std::stod(rows[2][1]));
  }
  SUBCASE("input errors") {
    CHECK(ws.run("rank " + linear + " " + ws.write("r.csv", "a,0.1,0.2\nb,0.3\n")).code == 2);
    CHECK(ws.run("rank " + linear + " " + ws.write("n.csv", "a,0.1,0.2\nb,0.3,x\n")).code == 2);
    CHECK(ws.run("rank " + linear + " " + ws.write("v.csv", "a,0.1,1.2\n")).code == 2);
    CHECK(ws.run("rank " + linear + " " + ws.write("h.csv", "id,c1\n")).code == 2);
    const auto binary = ws.write("nearly.json", kNearlyAll);
    CHECK(ws.run("rank " + binary + " " + ws.write("o.csv", "a,0.1,0.2\n")).code == 2);
    CHECK(ws.run("rank " + binary + " " + ws.write("o2.csv", "a,0.1,0.2\n") + " " + ws.write("w3.json", "[1, 1, 1]"))
              .code == 2);
    CHECK(ws.run("rank " + linear + " " + ws.write("o3.csv", "a,0.1,0.2\n") + " " + ws.write("w2.json", "[1, 1]")).code ==
          2);
  }
}
