#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "coulomb/cli.hpp"
#include "coulomb/errors.hpp"

using namespace coulomb;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kU1 = R"({"kind":"torus","rank":1,"matter":[[1]]})";
const std::string kU1Two = R"({"kind":"torus","rank":1,"matter":[[1],[1]]})";

}  // namespace

TEST_CASE("present finds xy = w") {
  const auto r = run({"present", "--theory", kU1, "--degree", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ring C[w, x, y] / (x*y - w)") != std::string::npos);
  CHECK(r.out.find("verification: pass") != std::string::npos);
}

TEST_CASE("present with too few generators reports what is missed") {
  const auto r = run({"present", "--theory", kU1, "--degree", "2", "--gens", "[[1]]"});
  CHECK(r.code == 1);
  CHECK(r.err.find("incomplete generators") != std::string::npos);
  CHECK(r.err.find("X(-1)") != std::string::npos);
}

TEST_CASE("mono-hs of U(1) with two flavors") {
  const auto r = run({"mono-hs", "--theory", kU1Two, "--order", "10"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int k = 0;
  while (std::getline(lines, line)) {
    CHECK(line == "q^(" + std::to_string(2 * k) + "/2): " + std::to_string(2 * k + 1));
    ++k;
  }
  CHECK(k == 11);
  const auto a = run({"mono-hs", "--theory", kU1Two, "--order", "4", "--method", "algebra"});
  const auto b = run({"mono-hs", "--theory", kU1Two, "--order", "4"});
  CHECK(a.out == b.out);
}

TEST_CASE("mono-hs on a quiver with fugacities") {
  const std::string q = R"({"kind":"quiver","vertices":1,"edges":[],"v":[1],"w":[2]})";
  const auto r = run({"mono-hs", "--theory", q, "--order", "1", "--fugacities", "on"});
  CHECK(r.code == 0);
  CHECK(r.out == "q^(0/2) * b^(0): 1\nq^(2/2) * b^(-1): 1\nq^(2/2) * b^(0): 1\nq^(2/2) * b^(1): 1\n");
}

TEST_CASE("duality reports equality as JSON") {
  const auto r = run({"duality", "--B", "[[1],[1]]", "--order", "8"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "equal");
  CHECK(j["order_checked"] == "8");
}

TEST_CASE("algebra products and commutators from expressions") {
  auto r = run({"alg-mul", "--theory", kU1, "--lhs", "x", "--rhs", "y"});
  CHECK(r.out.find("product: (w) * X[0]") != std::string::npos);
  r = run({"alg-mul", "--theory", kU1, "--lhs", "x", "--rhs", "y", "--mode", "quantized"});
  CHECK(r.out.find("product: (w + hbar) * X[0]") != std::string::npos);
  r = run({"quantize-comm", "--theory", kU1, "--lhs", "x", "--rhs", "y"});
  CHECK(r.out.find("commutator: (hbar) * X[0]") != std::string::npos);
  CHECK(r.out.find("poisson: (1) * X[0]") != std::string::npos);
  r = run({"alg-mul", "--theory", kU1, "--lhs", "x", "--rhs", "1", "--shift", "[\"1/2\"]"});
  CHECK(r.out.find("degree: 1\n") != std::string::npos);
  r = run({"alg-mul", "--theory", kU1, "--lhs", "y", "--rhs", "1", "--shift", "1/2"});
  CHECK(r.out.find("degree: 0\n") != std::string::npos);
  CHECK(r.out.find("charge: (-1)") != std::string::npos);
}

TEST_CASE("expression parser") {
  TorusTheory t;
  t.rank = 2;
  t.matter = {{1, 0}, {0, 1}, {1, 1}};
  const auto theory = share(t);
  const auto e = cli::parse_element(theory, "2*w1*X[1,0] - 1/2*(w2 + hbar)^2 + X[0,0]", ProductMode::classical);
  CHECK(e.terms().size() == 2);
  CHECK(cli::parse_element(theory, "X[1,0]*X[-1,0]", ProductMode::classical) ==
        cli::parse_element(theory, "w1*(w1+w2)", ProductMode::classical));
  CHECK_THROWS_AS(cli::parse_element(theory, "x", ProductMode::classical), cli::InputError);
  CHECK_THROWS_AS(cli::parse_element(theory, "X[1]", ProductMode::classical), cli::InputError);
  CHECK_THROWS_AS(cli::parse_element(theory, "w1 +", ProductMode::classical), cli::InputError);
  CHECK_THROWS_AS(cli::parse_element(theory, "(w1", ProductMode::classical), cli::InputError);
}

TEST_CASE("fiber-check") {
  const std::string t = R"({"kind":"torus","rank":2,"matter":[[1,0],[1,1]]})";
  auto r = run({"fiber-check", "--theory", t, "--w0", "[\"1\",\"2\"]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("yes") != std::string::npos);
  r = run({"fiber-check", "--theory", t, "--w0", "1,-1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("covector (1,1)") != std::string::npos);
  const auto a = run({"fiber-check", "--theory", t, "--seed", "7"});
  const auto b = run({"fiber-check", "--theory", t, "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("theory files via @path") {
  const std::string path = "test_cli_theory.json";
  {
    std::ofstream f(path);
    f << kU1Two;
  }
  const auto r = run({"mono-hs", "--theory", "@" + path, "--order", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "q^(0/2): 1\nq^(2/2): 3\n");
  std::remove(path.c_str());
  CHECK(run({"mono-hs", "--theory", "@" + path}).code == 1);
}

TEST_CASE("exit codes on malformed input") {
  struct Case {
    std::vector<std::string> args;
    int code;
    std::string message;
  };
  const std::vector<Case> corpus{
      {{}, 1, "subcommand"},
      {{"bogus"}, 1, "unknown subcommand"},
      {{"mono-hs"}, 1, "--theory"},
      {{"mono-hs", "--theory", kU1, "--frobnicate"}, 1, "frobnicate"},
      {{"mono-hs", "--theory", "{not json"}, 1, "malformed JSON"},
      {{"mono-hs", "--theory", R"({"rank":1,"matter":[[1]]})"}, 1, "theory.kind"},
      {{"mono-hs", "--theory", R"({"kind":"torus","matter":[[1]]})"}, 1, "theory.rank"},
      {{"mono-hs", "--theory", R"({"kind":"torus","rank":2,"matter":[[1]]})"}, 1, "theory.matter[0]"},
      {{"mono-hs", "--theory", R"({"kind":"torus","rank":1,"matter":[["a"]]})"}, 1, "theory.matter[0][0]"},
      {{"mono-hs", "--theory", R"({"kind":"quiver","vertices":1,"v":[1],"w":[1],"edges":[[0,3]]})"}, 1, "theory.edges"},
      {{"mono-hs", "--theory", R"({"kind":"quiver","vertices":2,"v":[1],"w":[1,1]})"}, 1, "theory.v"},
      {{"mono-hs", "--theory", kU1, "--order", "1/3"}, 1, "--order"},
      {{"mono-hs", "--theory", kU1, "--fugacities", "maybe"}, 1, "--fugacities"},
      {{"alg-mul", "--theory", kU1, "--lhs", "x", "--rhs", "z"}, 1, "unknown symbol"},
      {{"alg-mul", "--theory", kU1, "--lhs", "x", "--rhs", "y", "--mode", "fuzzy"}, 1, "--mode"},
      {{"duality", "--B", "[[1,1],[1,1]]"}, 1, "rank"},
      {{"fiber-check", "--theory", kU1, "--w0", "[\"1\",\"2\"]"}, 1, "--w0"},
      {{"mono-hs", "--theory", R"({"kind":"torus","rank":1,"matter":[]})"}, 2, "witness: (1)"},
      {{"present", "--theory", R"({"kind":"torus","rank":2,"matter":[[1,1]]})"}, 2, "witness"},
      {{"mono-hs", "--theory", R"({"kind":"quiver","vertices":1,"v":[2],"w":[1]})"}, 2, "witness"},
  };
  for (const auto& c : corpus) {
    const auto r = run(c.args);
    INFO(r.err);
    CHECK(r.code == c.code);
    CHECK(r.err.find(c.message) != std::string::npos);
  }
}

TEST_CASE("JSON output round-trips byte-identically") {
  const std::vector<std::vector<std::string>> commands{
      {"mono-hs", "--theory", kU1Two, "--order", "5/2", "--format", "json"},
      {"mono-hs", "--theory", R"({"kind":"quiver","vertices":2,"edges":[[0,1]],"v":[1,2],"w":[0,3]})", "--order",
       "3", "--fugacities", "on", "--format", "json"},
      {"present", "--theory", R"({"kind":"torus","rank":1,"matter":[[2]]})", "--degree", "3", "--format", "json"},
      {"alg-mul", "--theory", kU1, "--lhs", "x", "--rhs", "y", "--mode", "quantized", "--format", "json"},
      {"quantize-comm", "--theory", kU1, "--lhs", "x", "--rhs", "y", "--format", "json"},
      {"higgs-hs", "--theory", R"({"kind":"torus","rank":1,"matter":[[1],[-1]]})", "--order", "3", "--format",
       "json"},
      {"duality", "--B", "[[1],[1],[1]]", "--order", "3"},
      {"fiber-check", "--theory", kU1, "--w0", "[\"3/2\"]", "--format", "json"},
  };
  for (const auto& c : commands) {
    const auto r = run(c);
    INFO(c.front());
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.dump(2) + "\n" == r.out);
    // No binary numbers anywhere.
    std::function<void(const nlohmann::json&)> no_numbers = [&](const nlohmann::json& x) {
      CHECK_FALSE(x.is_number());
      if (x.is_structured())
        for (const auto& y : x) no_numbers(y);
    };
    no_numbers(j);
  }
}

TEST_CASE("present JSON carries exact relations") {
  const auto r = run({"present", "--theory", R"({"kind":"torus","rank":1,"matter":[[3]]})", "--degree", "4",
                      "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["relations"].size() == 1);
  CHECK(j["relations"][0]["text"] == "x*y - w^3");
  CHECK(j["surjective"] == true);
  CHECK(j["verified"] == true);
}
