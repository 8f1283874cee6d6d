#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ian/dsl.hpp"

using namespace ian;
using namespace ian::dsl;

namespace {

template <class T>
const Diagnostic* diag(const std::variant<T, Diagnostic>& r) {
  return std::get_if<Diagnostic>(&r);
}

}  // namespace

TEST_CASE("lowering the geometric series") {
  const auto r = compile("(recip (poly 1 (1 0) (-1 1)))");
  REQUIRE(std::holds_alternative<SeriesExpr>(r));
  const SeriesExpr& g = std::get<SeriesExpr>(r);
  CHECK(g.kind() == NodeKind::Recip);
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(testing::exact(g, {p}) == 1);
}

TEST_CASE("the arctangent program") {
  const auto a = parse("(antider 1 (recip (poly 1 (1 0) (1 2))))");
  REQUIRE(std::holds_alternative<Ast>(a));
  const Ast& ast = std::get<Ast>(a);
  CHECK(ast.kind == AstKind::Antider);
  CHECK(ast.index == 1);
  REQUIRE(ast.args.size() == 1);
  CHECK(ast.args[0].kind == AstKind::Recip);
}

TEST_CASE("diagnostics carry kind and position") {
  const auto r = compile("(recip (poly 1 (0 1)))");
  REQUIRE(diag(r));
  CHECK(diag(r)->kind == DiagnosticKind::Precondition);

  const auto bad = compile("(add (poly 1 (1 0))\n  (poly 2 (1 0 0)))");
  REQUIRE(diag(bad));
  CHECK(diag(bad)->kind == DiagnosticKind::Arity);

  const auto syn = compile("(recip (poly 1 (1 0)");
  REQUIRE(diag(syn));
  CHECK(diag(syn)->kind == DiagnosticKind::Syntax);

  const auto unknown = compile("(frobnicate 1)");
  REQUIRE(diag(unknown));
  CHECK(diag(unknown)->span.column == 2);
  CHECK_FALSE(diag(unknown)->expected.empty());

  const auto line2 = compile("(add (poly 1 (1 0))\n     (bogus))");
  REQUIRE(diag(line2));
  CHECK(diag(line2)->span.line == 2);
  CHECK(diag(line2)->to_string().rfind("2:", 0) == 0);
}

TEST_CASE("format and parse round trip") {
  const char* programs[] = {
      "(recip (poly 1 (1 0) (-1 1)))",
      "(antider 1 (subst (alg (-1) (0) (1 -1) 1) (poly 1 (1 2))))",
      "(translate (recip (poly 2 (1 0 0) (-1/2 1 0) (1/3 0 1))) 1/8 -1/9)",
      "(intlast 1/2 (subst (recip (poly 1 (1 0) (-1 1))) (poly 2 (1 1 1))))",
      "(permute (2 1) (mul (poly 2 (3 1 0)) (poly 2 (1 0 0) (1 0 1))))",
      "(inverse (antider 1 (recip (poly 1 (1 0) (1 1)))))",
      "(implicit (poly 2 (1 0 1) (-1 1 0) (-1 0 2)))",
      "(re (recip (poly 1 (1 0) (-1 1))))",
      "(scale -3/4 (deriv 1 (restrict0 2 (poly 2 (1 2 0) (1 1 1)))))",
      "(compose (recip (poly 1 (1 0) (-1 1))) (poly 1 (1 1) (1 2)))",
  };
  for (const char* text : programs) {
    const auto a = parse(text);
    REQUIRE_MESSAGE(std::holds_alternative<Ast>(a), text);
    const std::string once = format(std::get<Ast>(a));
    const auto b = parse(once);
    REQUIRE(std::holds_alternative<Ast>(b));
    CHECK(std::get<Ast>(b) == std::get<Ast>(a));
    CHECK(format(std::get<Ast>(b)) == once);
  }
}

TEST_CASE("hashes are stable") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hash_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("derivation files") {
  const auto f = parse_file(
      "; comment\n"
      "(def G (recip (poly 1 (1 0) (-1 1))))\n"
      "(def H (translate G 1/2))\n"
      "(expect-coeff H (3) 16 1/1000)\n"
      "(expect-const pi 10 \"3.1415926535\")\n"
      "(expect-overlap 10 (mul 6 (const arcsin_half)) (const pi))\n");
  REQUIRE(std::holds_alternative<DerivationFile>(f));
  const auto& d = std::get<DerivationFile>(f);
  REQUIRE(d.directives.size() == 5);
  CHECK(d.directives[2].value == 16);
  CHECK(d.directives[2].max_radius == Rational(1, 1000));
  CHECK(d.directives[3].digits == 10);

  CHECK(diag(parse_file("(def 1x (poly 1 (1 0)))")));
  CHECK(diag(parse_file("(expect-const pi 0 \"3\")")));
  CHECK(diag(parse_file("(expect-const pi 10 \"3.x\")")));
}

TEST_CASE("deep nesting is a diagnostic") {
  std::string deep;
  for (int i = 0; i < 2000; ++i) deep += "(scale 2 ";
  deep += "(poly 1 (1 0))";
  for (int i = 0; i < 2000; ++i) deep += ")";
  const auto r = compile(deep);
  REQUIRE(diag(r));
  CHECK(diag(r)->kind == DiagnosticKind::Syntax);
}

TEST_CASE("mutated programs never crash the parser") {
  const std::string seed = "(antider 1 (subst (alg (-1) (0) (1 -1) 1) (poly 1 (1 2))))";
  const std::string alphabet = "()0123456789-/ abcdefghijklmnopqrstuvwxyz\"\n;";
  std::mt19937_64 rng(99);
  int parsed = 0;
  for (int k = 0; k < 1000; ++k) {
    std::string s = seed;
    const int edits = 1 + static_cast<int>(rng() % 6);
    for (int j = 0; j < edits; ++j) {
      const size_t pos = rng() % (s.size() + 1);
      switch (rng() % 3) {
        case 0: s.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        case 1: if (pos < s.size()) s.erase(pos, 1); break;
        default: if (pos < s.size()) s[pos] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    if (std::holds_alternative<SeriesExpr>(compile(s))) ++parsed;
  }
  CHECK(parsed < 1000);
}
