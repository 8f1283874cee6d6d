#include "ian/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ian/algebraic.hpp"
#include "ian/error.hpp"
#include "ian/weierstrass.hpp"

namespace ian::dsl {

using ian::to_string;

namespace {

constexpr int kMaxDepth = 512;
constexpr long kMaxExponent = 1 << 16;

struct Fail {
  Diagnostic d;
};

[[noreturn]] void fail(DiagnosticKind kind, Span span, std::string message, std::vector<std::string> expected = {}) {
  throw Fail{Diagnostic{kind, span, std::move(message), std::move(expected)}};
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read(0));
      skip();
    }
    return out;
  }

 private:
  Span here() const { return Span{line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return c > ' ' && c != '(' && c != ')' && c != ';' && c != '"' && static_cast<unsigned char>(c) < 0x7f;
  }

  Sexp read(int depth) {
    if (depth > kMaxDepth) fail(DiagnosticKind::Syntax, here(), "nesting too deep");
    Sexp s;
    s.span = here();
    const char c = text_[pos_];
    if (c == '(') {
      s.is_list = true;
      advance();
      skip();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        s.items.push_back(read(depth + 1));
        skip();
      }
      if (pos_ >= text_.size()) fail(DiagnosticKind::Syntax, here(), "unexpected end of input", {"')'", "expression"});
      advance();
      return s;
    }
    if (c == ')') fail(DiagnosticKind::Syntax, here(), "unbalanced ')'", {"'('", "atom"});
    if (c == '"') {
      advance();
      std::string body;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') fail(DiagnosticKind::Syntax, here(), "newline in string", {"'\"'"});
        body.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) fail(DiagnosticKind::Syntax, here(), "unterminated string", {"'\"'"});
      advance();
      s.atom = "\"" + body + "\"";
      return s;
    }
    if (!atom_char(c)) fail(DiagnosticKind::Syntax, here(), "unexpected character", {"'('", "atom"});
    while (pos_ < text_.size() && atom_char(text_[pos_])) {
      s.atom.push_back(text_[pos_]);
      advance();
    }
    return s;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_integer_text(std::string_view t) {
  if (!t.empty() && t.front() == '-') t.remove_prefix(1);
  return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_rational_text(std::string_view t) {
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return is_integer_text(t);
  std::string_view den = t.substr(slash + 1);
  return is_integer_text(t.substr(0, slash)) && !den.empty() && den.front() != '-' && is_integer_text(den);
}

bool is_symbol_text(std::string_view t) {
  if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t.front())) || t.front() == '_')) return false;
  return std::all_of(t.begin(), t.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

Rational rat(const Sexp& s) {
  if (s.is_list || !is_rational_text(s.atom)) fail(DiagnosticKind::Syntax, s.span, "expected a rational number", {"rational"});
  auto slash = s.atom.find('/');
  if (slash != std::string::npos && Integer(s.atom.substr(slash + 1)) == 0) {
    fail(DiagnosticKind::Syntax, s.span, "zero denominator", {"rational"});
  }
  return parse_rational(s.atom);
}

long integer(const Sexp& s, long lo, long hi, const char* what) {
  if (s.is_list || !is_integer_text(s.atom)) fail(DiagnosticKind::Syntax, s.span, std::string("expected ") + what, {"integer"});
  if (s.atom.size() > 12) fail(DiagnosticKind::Syntax, s.span, std::string(what) + " out of range");
  const long v = std::stol(s.atom);
  if (v < lo || v > hi) fail(DiagnosticKind::Syntax, s.span, std::string(what) + " out of range");
  return v;
}

const Sexp& list(const Sexp& s, const char* what) {
  if (!s.is_list) fail(DiagnosticKind::Syntax, s.span, std::string("expected ") + what, {"'('"});
  return s;
}

Polynomial poly_literal(const Sexp& s) {
  // (poly <arity> (<rat> <exp>*)+)
  if (s.items.size() < 3) fail(DiagnosticKind::Syntax, s.span, "poly needs an arity and at least one term", {"(coefficient exponents...)"});
  const int n = static_cast<int>(integer(s.items[1], 0, kMaxArity, "arity"));
  Polynomial p(n);
  for (size_t k = 2; k < s.items.size(); ++k) {
    const Sexp& t = list(s.items[k], "a term (coefficient exponents...)");
    if (t.items.empty()) fail(DiagnosticKind::Syntax, t.span, "empty term", {"rational"});
    if (static_cast<int>(t.items.size()) != n + 1) {
      fail(DiagnosticKind::Arity, t.span,
           "term has " + std::to_string(t.items.size() - 1) + " exponents, arity is " + std::to_string(n));
    }
    Rational c = rat(t.items[0]);
    MultiIndex alpha(n);
    for (int i = 0; i < n; ++i) {
      alpha.set(i, static_cast<std::uint32_t>(integer(t.items[static_cast<size_t>(i) + 1], 0, kMaxExponent, "exponent")));
    }
    p.add_term(alpha, c);
  }
  return p;
}

const std::map<std::string, AstKind>& heads() {
  static const std::map<std::string, AstKind> m = {
      {"poly", AstKind::Poly},         {"alg", AstKind::Alg},         {"recip", AstKind::Recip},
      {"add", AstKind::Add},           {"mul", AstKind::Mul},         {"scale", AstKind::Scale},
      {"subst", AstKind::Subst},       {"compose", AstKind::Compose}, {"translate", AstKind::Translate},
      {"antider", AstKind::Antider},   {"deriv", AstKind::Deriv},     {"restrict0", AstKind::Restrict0},
      {"permute", AstKind::Permute},   {"inverse", AstKind::Inverse}, {"implicit", AstKind::Implicit},
      {"re", AstKind::Re},             {"im", AstKind::Im},           {"intlast", AstKind::IntLast},
  };
  return m;
}

std::vector<std::string> head_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : heads()) out.push_back(k);
  return out;
}

const char* head_of(AstKind k) {
  for (const auto& [name, kind] : heads()) {
    if (kind == k) return name.c_str();
  }
  return "?";
}

void want_args(const Sexp& s, size_t count, const char* shape) {
  if (s.items.size() != count + 1) {
    fail(DiagnosticKind::Syntax, s.span, std::string("expected ") + shape);
  }
}

Ast build_expr(const Sexp& s) {
  Ast a;
  a.span = s.span;
  if (!s.is_list) {
    if (!is_symbol_text(s.atom) || heads().count(s.atom)) {
      fail(DiagnosticKind::Syntax, s.span, "expected an expression", {"'('", "name"});
    }
    a.kind = AstKind::Ref;
    a.name = s.atom;
    return a;
  }
  if (s.items.empty() || s.items[0].is_list) fail(DiagnosticKind::Syntax, s.span, "expected an operator", head_names());
  auto it = heads().find(s.items[0].atom);
  if (it == heads().end()) {
    fail(DiagnosticKind::Syntax, s.items[0].span, "unknown operator '" + s.items[0].atom + "'", head_names());
  }
  a.kind = it->second;
  const auto& items = s.items;
  auto child = [&](size_t k) { a.args.push_back(build_expr(items[k])); };
  auto var = [&](size_t k) { return static_cast<int>(integer(items[k], 1, kMaxArity, "variable index")); };
  switch (a.kind) {
    case AstKind::Poly:
      a.poly = poly_literal(s);
      break;
    case AstKind::Alg: {
      // (alg (row_0) (row_1) ... y0) or (alg ((row_0) ...) y0)
      if (items.size() < 3) fail(DiagnosticKind::Syntax, s.span, "alg needs coefficient rows and y0", {"(rational...)"});
      std::vector<const Sexp*> rows;
      if (items.size() == 3 && items[1].is_list && !items[1].items.empty() && items[1].items[0].is_list) {
        for (const auto& r : items[1].items) rows.push_back(&r);
      } else {
        for (size_t k = 1; k + 1 < items.size(); ++k) rows.push_back(&items[k]);
      }
      for (const Sexp* r : rows) {
        const Sexp& row = list(*r, "a coefficient row (rational...)");
        if (row.items.empty()) fail(DiagnosticKind::Syntax, row.span, "empty coefficient row", {"rational"});
        if (row.items.size() > static_cast<size_t>(kMaxExponent)) fail(DiagnosticKind::Syntax, row.span, "row too long");
        std::vector<Rational> v;
        for (const auto& c : row.items) v.push_back(rat(c));
        a.rows.push_back(std::move(v));
      }
      a.q = rat(items.back());
      break;
    }
    case AstKind::Recip:
    case AstKind::Inverse:
    case AstKind::Re:
    case AstKind::Im:
      want_args(s, 1, "one expression");
      child(1);
      break;
    case AstKind::Add:
    case AstKind::Mul:
      want_args(s, 2, "two expressions");
      child(1);
      child(2);
      break;
    case AstKind::Scale:
    case AstKind::IntLast:
      want_args(s, 2, "a rational and an expression");
      a.q = rat(items[1]);
      child(2);
      break;
    case AstKind::Subst:
      if (items.size() < 3) fail(DiagnosticKind::Syntax, s.span, "subst needs an expression and polynomials", {"(poly ...)"});
      child(1);
      for (size_t k = 2; k < items.size(); ++k) {
        const Sexp& p = list(items[k], "(poly ...)");
        if (p.items.empty() || p.items[0].is_list || p.items[0].atom != "poly") {
          fail(DiagnosticKind::Syntax, p.span, "subst arguments must be polynomial literals", {"(poly ...)"});
        }
        a.polys.push_back(poly_literal(p));
      }
      break;
    case AstKind::Compose:
      if (items.size() < 3) fail(DiagnosticKind::Syntax, s.span, "compose needs an outer and inner expressions", {"expression"});
      for (size_t k = 1; k < items.size(); ++k) child(k);
      break;
    case AstKind::Translate:
      if (items.size() < 3) fail(DiagnosticKind::Syntax, s.span, "translate needs an expression and a point", {"rational"});
      child(1);
      for (size_t k = 2; k < items.size(); ++k) a.point.push_back(rat(items[k]));
      break;
    case AstKind::Antider:
    case AstKind::Deriv:
    case AstKind::Restrict0:
      want_args(s, 2, "a variable index and an expression");
      a.index = var(1);
      child(2);
      break;
    case AstKind::Permute: {
      want_args(s, 2, "an index list and an expression");
      const Sexp& l = list(items[1], "an index list");
      if (l.items.empty()) fail(DiagnosticKind::Syntax, l.span, "empty permutation", {"integer"});
      for (const auto& i : l.items) a.perm.push_back(static_cast<int>(integer(i, 1, kMaxArity, "variable index")));
      child(2);
      break;
    }
    case AstKind::Implicit: {
      size_t k = 1;
      a.index = 1;
      if (k < items.size() && !items[k].is_list && is_integer_text(items[k].atom)) {
        a.index = static_cast<int>(integer(items[k], 1, kMaxArity, "component index"));
        ++k;
      }
      if (k >= items.size()) fail(DiagnosticKind::Syntax, s.span, "implicit needs at least one equation", {"expression"});
      for (; k < items.size(); ++k) child(k);
      break;
    }
    case AstKind::Ref:
      break;
  }
  return a;
}

std::string fmt_poly(const Polynomial& p) {
  std::string out = "(poly " + std::to_string(p.arity());
  if (p.is_zero()) {
    out += " (0";
    for (int i = 0; i < p.arity(); ++i) out += " 0";
    out += ")";
  }
  for (const auto& [alpha, c] : p.terms()) {
    out += " (" + to_string(c);
    for (int i = 0; i < p.arity(); ++i) out += " " + std::to_string(alpha[i]);
    out += ")";
  }
  return out + ")";
}

Diagnostic from_error(const Error& e, Span span) {
  DiagnosticKind k = e.kind() == ErrorKind::ArityMismatch ? DiagnosticKind::Arity : DiagnosticKind::Precondition;
  return Diagnostic{k, span, e.what(), {}};
}

SeriesExpr lower_rec(const Ast& a, const Env& env, int depth);

SeriesExpr lower_at(const Ast& a, const Env& env, int depth) {
  try {
    return lower_rec(a, env, depth);
  } catch (const Error& e) {
    throw Fail{from_error(e, a.span)};
  }
}

void check_var(const Ast& a, const SeriesExpr& e, int var) {
  if (var > e.arity()) {
    fail(DiagnosticKind::Arity, a.span,
         "variable " + std::to_string(var) + " out of range for arity " + std::to_string(e.arity()));
  }
}

SeriesExpr lower_rec(const Ast& a, const Env& env, int depth) {
  if (depth > kMaxDepth) fail(DiagnosticKind::Syntax, a.span, "nesting too deep");
  std::vector<SeriesExpr> c;
  for (const auto& arg : a.args) c.push_back(lower_at(arg, env, depth + 1));
  auto same_arity = [&]() {
    for (const auto& x : c) {
      if (x.arity() != c[0].arity()) fail(DiagnosticKind::Arity, a.span, "operands have different arities");
    }
  };
  switch (a.kind) {
    case AstKind::Ref: {
      auto it = env.find(a.name);
      if (it == env.end()) fail(DiagnosticKind::Syntax, a.span, "undefined name '" + a.name + "'", {"defined name"});
      return it->second;
    }
    case AstKind::Poly:
      return poly(a.poly);
    case AstKind::Alg: {
      Polynomial P(2);
      for (size_t j = 0; j < a.rows.size(); ++j) {
        for (size_t i = 0; i < a.rows[j].size(); ++i) {
          P.add_term(MultiIndex{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, a.rows[j][i]);
        }
      }
      return algebraic_series(make_algebraic_def(P, a.q));
    }
    case AstKind::Recip:
      return recip(c[0]);
    case AstKind::Add:
      same_arity();
      return add(c[0], c[1]);
    case AstKind::Mul:
      same_arity();
      return mul(c[0], c[1]);
    case AstKind::Scale:
      return scale(a.q, c[0]);
    case AstKind::Subst:
      if (static_cast<int>(a.polys.size()) != c[0].arity()) {
        fail(DiagnosticKind::Arity, a.span, "subst needs one polynomial per variable of the outer series");
      }
      return subst_poly(c[0], a.polys);
    case AstKind::Compose: {
      std::vector<SeriesExpr> inner(c.begin() + 1, c.end());
      if (static_cast<int>(inner.size()) != c[0].arity()) {
        fail(DiagnosticKind::Arity, a.span, "compose needs one inner series per variable of the outer series");
      }
      for (const auto& g : inner) {
        if (g.arity() != inner[0].arity()) fail(DiagnosticKind::Arity, a.span, "inner series have different arities");
      }
      return compose_series(c[0], inner);
    }
    case AstKind::Translate:
      if (static_cast<int>(a.point.size()) != c[0].arity()) {
        fail(DiagnosticKind::Arity, a.span, "translation point size differs from arity");
      }
      return translate(c[0], a.point);
    case AstKind::Antider:
      check_var(a, c[0], a.index);
      return antider(c[0], a.index - 1);
    case AstKind::Deriv:
      check_var(a, c[0], a.index);
      return deriv(c[0], a.index - 1);
    case AstKind::Restrict0:
      check_var(a, c[0], a.index);
      return restrict0(c[0], a.index - 1);
    case AstKind::Permute: {
      if (static_cast<int>(a.perm.size()) != c[0].arity()) fail(DiagnosticKind::Arity, a.span, "permutation size differs from arity");
      std::vector<int> sigma;
      for (int p : a.perm) sigma.push_back(p - 1);
      return permute(c[0], sigma);
    }
    case AstKind::Inverse:
      return inverse_series(c[0]);
    case AstKind::Implicit: {
      auto comps = implicit_series(c);
      if (a.index > static_cast<int>(comps.size())) fail(DiagnosticKind::Arity, a.span, "component index out of range");
      return comps[static_cast<size_t>(a.index) - 1];
    }
    case AstKind::Re:
      return complexify(c[0]).first;
    case AstKind::Im:
      return complexify(c[0]).second;
    case AstKind::IntLast:
      if (c[0].arity() < 1) fail(DiagnosticKind::Arity, a.span, "intlast needs at least one variable");
      return integrate_last(c[0], a.q);
  }
  fail(DiagnosticKind::Syntax, a.span, "unsupported expression");
}

std::string quote_strip(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

bool is_string(const Sexp& s) { return !s.is_list && !s.atom.empty() && s.atom.front() == '"'; }

std::string name_of(const Sexp& s) {
  if (s.is_list || !is_symbol_text(s.atom)) fail(DiagnosticKind::Syntax, s.span, "expected a name", {"name"});
  return s.atom;
}

std::string decimal_of(const Sexp& s) {
  if (!is_string(s)) fail(DiagnosticKind::Syntax, s.span, "expected a quoted decimal", {"\"decimal\""});
  std::string d = quote_strip(s.atom);
  try {
    (void)parse_decimal(d);
  } catch (const Error&) {
    fail(DiagnosticKind::Syntax, s.span, "malformed decimal", {"\"decimal\""});
  }
  return d;
}

Directive directive(const Sexp& s) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list) {
    fail(DiagnosticKind::Syntax, s.span, "expected a directive",
         {"def", "expect-coeff", "expect-value", "expect-const", "expect-overlap"});
  }
  Directive d;
  d.head = s.items[0].atom;
  d.span = s.span;
  const auto& it = s.items;
  if (d.head == "def") {
    want_args(s, 2, "(def NAME expr)");
    d.name = name_of(it[1]);
    d.expr = build_expr(it[2]);
  } else if (d.head == "expect-coeff") {
    if (it.size() != 4 && it.size() != 5) fail(DiagnosticKind::Syntax, s.span, "expected (expect-coeff NAME (exponents) value [radius])");
    d.name = name_of(it[1]);
    for (const auto& e : list(it[2], "an exponent list").items) {
      d.exps.push_back(static_cast<std::uint32_t>(integer(e, 0, kMaxExponent, "exponent")));
    }
    d.value = rat(it[3]);
    if (it.size() == 5) d.max_radius = rat(it[4]);
  } else if (d.head == "expect-value") {
    want_args(s, 4, "(expect-value NAME (point) digits \"decimal\")");
    d.name = name_of(it[1]);
    for (const auto& x : list(it[2], "a point").items) d.point.push_back(rat(x));
    d.digits = static_cast<int>(integer(it[3], 1, 1000, "digits"));
    d.decimal = decimal_of(it[4]);
  } else if (d.head == "expect-const") {
    want_args(s, 3, "(expect-const NAME digits \"decimal\")");
    if (it[1].is_list || is_string(it[1])) fail(DiagnosticKind::Syntax, it[1].span, "expected a constant name", {"name"});
    d.name = it[1].atom;
    d.digits = static_cast<int>(integer(it[2], 1, 1000, "digits"));
    d.decimal = decimal_of(it[3]);
  } else if (d.head == "expect-overlap") {
    want_args(s, 3, "(expect-overlap digits cexpr cexpr)");
    d.digits = static_cast<int>(integer(it[1], 1, 1000, "digits"));
    d.operands = {it[2], it[3]};
  } else {
    fail(DiagnosticKind::Syntax, it[0].span, "unknown directive '" + d.head + "'",
         {"def", "expect-coeff", "expect-value", "expect-const", "expect-overlap"});
  }
  return d;
}

}  // namespace

const char* to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::Syntax: return "SyntaxError";
    case DiagnosticKind::Arity: return "ArityError";
    case DiagnosticKind::Precondition: return "PreconditionError";
  }
  return "?";
}

std::string Diagnostic::to_string() const {
  std::string out = std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + dsl::to_string(kind) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
    out += ")";
  }
  return out;
}

bool operator==(const Ast& a, const Ast& b) {
  return a.kind == b.kind && a.name == b.name && a.poly == b.poly && a.rows == b.rows && a.q == b.q &&
         a.point == b.point && a.index == b.index && a.perm == b.perm && a.polys == b.polys && a.args == b.args;
}

std::variant<std::vector<Sexp>, Diagnostic> read_all(std::string_view text) {
  try {
    return Reader(text).all();
  } catch (const Fail& f) {
    return f.d;
  }
}

std::variant<Ast, Diagnostic> build(const Sexp& s) {
  try {
    return build_expr(s);
  } catch (const Fail& f) {
    return f.d;
  } catch (const Error& e) {
    return from_error(e, s.span);
  }
}

std::variant<Ast, Diagnostic> parse(std::string_view text) {
  auto r = read_all(text);
  if (auto* d = std::get_if<Diagnostic>(&r)) return *d;
  auto& items = std::get<std::vector<Sexp>>(r);
  if (items.empty()) return Diagnostic{DiagnosticKind::Syntax, Span{}, "empty input", {"expression"}};
  if (items.size() > 1) return Diagnostic{DiagnosticKind::Syntax, items[1].span, "trailing input after expression", {"end of input"}};
  return build(items[0]);
}

std::string format(const Ast& a) {
  switch (a.kind) {
    case AstKind::Ref:
      return a.name;
    case AstKind::Poly:
      return fmt_poly(a.poly);
    case AstKind::Alg: {
      std::string out = "(alg";
      for (const auto& row : a.rows) {
        out += " (";
        for (size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + to_string(row[i]);
        out += ")";
      }
      return out + " " + to_string(a.q) + ")";
    }
    default:
      break;
  }
  std::string out = std::string("(") + head_of(a.kind);
  switch (a.kind) {
    case AstKind::Scale:
    case AstKind::IntLast:
      out += " " + to_string(a.q);
      break;
    case AstKind::Antider:
    case AstKind::Deriv:
    case AstKind::Restrict0:
      out += " " + std::to_string(a.index);
      break;
    case AstKind::Permute:
      out += " (";
      for (size_t i = 0; i < a.perm.size(); ++i) out += (i ? " " : "") + std::to_string(a.perm[i]);
      out += ")";
      break;
    case AstKind::Implicit:
      if (a.index != 1) out += " " + std::to_string(a.index);
      break;
    default:
      break;
  }
  for (const auto& arg : a.args) out += " " + format(arg);
  if (a.kind == AstKind::Translate) {
    for (const auto& x : a.point) out += " " + to_string(x);
  }
  if (a.kind == AstKind::Subst) {
    for (const auto& p : a.polys) out += " " + fmt_poly(p);
  }
  return out + ")";
}

std::variant<SeriesExpr, Diagnostic> lower(const Ast& a, const Env& env) {
  try {
    return lower_at(a, env, 0);
  } catch (const Fail& f) {
    return f.d;
  } catch (const Error& e) {
    return from_error(e, a.span);
  }
}

std::variant<SeriesExpr, Diagnostic> compile(std::string_view text, const Env& env) {
  auto p = parse(text);
  if (auto* d = std::get_if<Diagnostic>(&p)) return *d;
  return lower(std::get<Ast>(p), env);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

std::variant<DerivationFile, Diagnostic> parse_file(std::string_view text) {
  auto r = read_all(text);
  if (auto* d = std::get_if<Diagnostic>(&r)) return *d;
  DerivationFile file;
  try {
    for (const auto& s : std::get<std::vector<Sexp>>(r)) {
      file.directives.push_back(directive(s));
      const Directive& d = file.directives.back();
      if (d.head == "def") file.canonical += "(def " + d.name + " " + format(d.expr) + ")\n";
    }
  } catch (const Fail& f) {
    return f.d;
  } catch (const Error& e) {
    return Diagnostic{DiagnosticKind::Syntax, Span{}, e.what(), {}};
  }
  return file;
}

}  // namespace ian::dsl
