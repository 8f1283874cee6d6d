#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "ian/cli.hpp"
#include "ian/verify.hpp"
#include "oracles.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ian");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ian::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("const prints the oracle digits") {
  const Run r = run({"const", "pi", "--digits", "30"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3.141592653589793238462643383280") != std::string::npos);
}

TEST_CASE("coefficient listing") {
  const Run r = run({"coeffs", "-e", "(recip (poly 1 (1 0) (-1 1)))", "--order", "3", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "coeffs");
  for (const char* k : {"(0)", "(1)", "(2)", "(3)"}) CHECK(j["mid"][k] == "1");
}

TEST_CASE("evaluation at the default point") {
  const Run r = run({"eval", "-e", "(poly 1 (1 1))", "--digits", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.00000") != std::string::npos);
}

TEST_CASE("json field order and determinism") {
  const Run a = run({"const", "e", "--digits", "25", "--json"});
  const Run b = run({"const", "e", "--digits", "25", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::ordered_json::parse(a.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"kind", "name", "mid", "rad", "digits", "derivation_hash"});
  CHECK(j["digits"] == 25);
}

TEST_CASE("exit codes") {
  CHECK(run({"eval", "-e", "(recip (poly 1 (1 0)"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"eval", "-e", "(recip (poly 1 (1 0) (-1 1)))", "--at", "2"}).code == 2);
  CHECK(run({"const", "log:-1"}).code == 2);
  const Run d = run({"eval", "-e", "(recip (poly 1 (0 1)))"});
  CHECK(d.code == 2);
  CHECK(d.err.find("Precondition") != std::string::npos);
}

TEST_CASE("weierstrass subcommands") {
  const Run w = run({"wdiv", "(poly 2 (1 0 2) (-1 1 0))", "(poly 2 (1 0 3))", "--d", "2", "--orders", "3,5", "--json"});
  REQUIRE(w.code == 0);
  const auto j = nlohmann::json::parse(w.out);
  CHECK(j["mid"]["h"]["(0 1)"] == "1");
  CHECK(j["mid"]["r"]["(1 1)"] == "1");
  const Run p = run({"wprep", "-e", "(poly 2 (1 0 2) (1 1 1) (1 1 0))", "--d", "2"});
  CHECK(p.code == 0);
}

TEST_CASE("majorant subcommand") {
  const Run r = run({"majorant", "-e", "(recip (poly 1 (1 0) (-1 1)))", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "majorant");
  CHECK(j["radii"].size() == 1);
}

TEST_CASE("failing derivations report verification failure") {
  const ian::SuiteReport bad = ian::run_derivation("inline", "(def G (recip (poly 1 (1 0) (-1 1))))\n(expect-coeff G (2) 2)\n");
  CHECK(bad.exit_code() == 3);
  const ian::SuiteReport good = ian::run_derivation("inline", "(def G (recip (poly 1 (1 0) (-1 1))))\n(expect-coeff G (2) 1)\n");
  CHECK(good.exit_code() == 0);
}
