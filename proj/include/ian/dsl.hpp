#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ian/polynomial.hpp"
#include "ian/rational.hpp"
#include "ian/series.hpp"

namespace ian::dsl {

struct Span {
  int line = 1;
  int column = 1;
};

enum class DiagnosticKind { Syntax, Arity, Precondition };

const char* to_string(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::Syntax;
  Span span;
  std::string message;
  std::vector<std::string> expected;

  std::string to_string() const;
};

/// Raw S-expression: an atom or a parenthesised list.
struct Sexp {
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> items;
  Span span;
};

/// Reads every top-level S-expression in text. Nesting deeper than 512 is a
/// syntax error.
std::variant<std::vector<Sexp>, Diagnostic> read_all(std::string_view text);

enum class AstKind {
  Ref,
  Poly,
  Alg,
  Recip,
  Add,
  Mul,
  Scale,
  Subst,
  Compose,
  Translate,
  Antider,
  Deriv,
  Restrict0,
  Permute,
  Inverse,
  Implicit,
  Re,
  Im,
  IntLast,
};

/// Typed expression tree. Variable indices are 1-based as written.
struct Ast {
  AstKind kind = AstKind::Poly;
  Span span;
  std::string name;                     // Ref
  Polynomial poly;                      // Poly
  std::vector<std::vector<Rational>> rows;  // Alg: X-coefficients per power of Y
  Rational q;                           // Scale factor, Alg y0, IntLast endpoint
  std::vector<Rational> point;          // Translate
  int index = 0;                        // Antider/Deriv/Restrict0 variable, Implicit component
  std::vector<int> perm;                // Permute
  std::vector<Polynomial> polys;        // Subst
  std::vector<Ast> args;

  friend bool operator==(const Ast& a, const Ast& b);
};

/// Builds the typed tree from an S-expression.
std::variant<Ast, Diagnostic> build(const Sexp& s);
/// Parses exactly one expression.
std::variant<Ast, Diagnostic> parse(std::string_view text);

/// Canonical text; parse(format(a)) == a.
std::string format(const Ast& a);

using Env = std::map<std::string, SeriesExpr>;

/// Lowers to a series node; library precondition failures become diagnostics.
std::variant<SeriesExpr, Diagnostic> lower(const Ast& a, const Env& env = {});
/// parse + lower.
std::variant<SeriesExpr, Diagnostic> compile(std::string_view text, const Env& env = {});

/// FNV-1a 64-bit, printed as 16 hex digits.
std::uint64_t fnv1a64(std::string_view text);
std::string hash_hex(std::string_view text);

// Derivation files: a sequence of directives.
//   (def NAME expr)
//   (expect-coeff NAME (e1 ... en) value [max-radius])
//   (expect-value NAME (x1 ... xn) digits "decimal")
//   (expect-const CONST digits "decimal")
//   (expect-overlap digits cexpr cexpr)
// where cexpr := (const NAME) | rat | (add c c) | (sub c c) | (mul c c) | (div c c) | (pow c k).
struct Directive {
  std::string head;
  Span span;
  std::string name;
  Ast expr;                        // def
  std::vector<std::uint32_t> exps; // expect-coeff
  Rational value;                  // expect-coeff
  std::optional<Rational> max_radius;
  std::vector<Rational> point;     // expect-value
  int digits = 0;
  std::string decimal;             // expected digits for expect-value / expect-const
  std::vector<Sexp> operands;      // expect-overlap
};

struct DerivationFile {
  std::vector<Directive> directives;
  std::string canonical;  // canonical text of every def, in order
};

std::variant<DerivationFile, Diagnostic> parse_file(std::string_view text);

}  // namespace ian::dsl
