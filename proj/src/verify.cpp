#include "ian/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ian/algebraic.hpp"
#include "ian/constants.hpp"
#include "ian/error.hpp"
#include "ian/eval.hpp"
#include "ian/majorant.hpp"
#include "ian/node.hpp"
#include "ian/random_dag.hpp"
#include "ian/weierstrass.hpp"

#ifndef IAN_DERIVATIONS_DIR
#define IAN_DERIVATIONS_DIR "derivations"
#endif

namespace ian {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

CheckStatus status_of(const dsl::Diagnostic& d) {
  return d.kind == dsl::DiagnosticKind::Precondition ? CheckStatus::Precondition : CheckStatus::Diagnostic;
}

long bits_for(int digits) { return static_cast<long>(digits * 3.33) + 64; }

/// True when b, widened by the oracle's own truncation error, contains it.
bool matches_oracle(const Ball& b, const std::string& decimal, int digits, std::string& detail) {
  const Rational oracle = parse_decimal(decimal);
  const auto dot = decimal.find('.');
  const long frac = dot == std::string::npos ? 0 : static_cast<long>(decimal.size() - dot - 1);
  const Rational slack = pow10(-frac);
  const Rational rad = b.rad().to_rational();
  const Rational off = abs(Rational(b.mid().to_rational() - oracle));
  detail = "ball " + b.to_string(digits + 3);
  if (rad > digit_tolerance(digits)) {
    detail += ", radius above 10^-" + std::to_string(digits) + "/2";
    return false;
  }
  if (off > rad + slack) {
    detail += ", misses oracle " + decimal;
    return false;
  }
  return true;
}

Ball const_expr(const dsl::Sexp& s, int digits) {
  const long prec = bits_for(digits) + 32;
  if (!s.is_list) {
    if (s.atom.find_first_not_of("-0123456789/") == std::string::npos) return Ball::from_rational(parse_rational(s.atom), prec);
    throw Error(ErrorKind::InvalidArgument, "expected a rational or a (const ...) form, got '" + s.atom + "'");
  }
  if (s.items.size() < 2 || s.items[0].is_list) throw Error(ErrorKind::InvalidArgument, "malformed constant expression");
  const std::string& h = s.items[0].atom;
  if (h == "const") return constant_by_name(s.items[1].atom, digits + 5).ball;
  if (s.items.size() != 3) throw Error(ErrorKind::InvalidArgument, "'" + h + "' takes two operands");
  if (h == "pow") {
    const long k = std::stol(s.items[2].atom);
    if (k < 0 || k > 64) throw Error(ErrorKind::InvalidArgument, "power out of range");
    return pow(const_expr(s.items[1], digits), static_cast<unsigned>(k), prec);
  }
  const Ball a = const_expr(s.items[1], digits);
  const Ball b = const_expr(s.items[2], digits);
  if (h == "add") return add(a, b, prec);
  if (h == "sub") return sub(a, b, prec);
  if (h == "mul") return mul(a, b, prec);
  if (h == "div") return div(a, b, prec);
  throw Error(ErrorKind::InvalidArgument, "unknown constant operator '" + h + "'");
}

void run_directive(const dsl::Directive& d, dsl::Env& env, CheckOutcome& out) {
  auto lookup = [&]() -> SeriesExpr {
    auto it = env.find(d.name);
    if (it == env.end()) throw Error(ErrorKind::InvalidArgument, "undefined name '" + d.name + "'");
    return it->second;
  };
  if (d.head == "def") {
    auto r = dsl::lower(d.expr, env);
    if (auto* diag = std::get_if<dsl::Diagnostic>(&r)) {
      out.status = status_of(*diag);
      out.detail = diag->to_string();
      return;
    }
    env[d.name] = std::get<SeriesExpr>(r);
    out.detail = "defined";
    return;
  }
  if (d.head == "expect-coeff") {
    const SeriesExpr e = lookup();
    if (static_cast<int>(d.exps.size()) != e.arity()) {
      out.status = CheckStatus::Diagnostic;
      out.detail = "index arity differs from series arity";
      return;
    }
    const MultiIndex alpha{std::span<const std::uint32_t>(d.exps)};
    const Rational tol = d.max_radius ? std::min(*d.max_radius, default_coeff_tolerance()) : default_coeff_tolerance();
    const Coefficient c = coeff(e, alpha, tol);
    bool ok;
    if (const auto* q = std::get_if<Rational>(&c)) {
      ok = *q == d.value;
    } else {
      const Ball& b = std::get<Ball>(c);
      ok = b.contains(d.value) && (!d.max_radius || b.rad().to_rational() <= *d.max_radius);
    }
    out.detail = "coeff " + alpha.to_string() + " = " + to_string(c, 40) + ", expected " + to_string(d.value);
    if (!ok) out.status = CheckStatus::Fail;
    return;
  }
  if (d.head == "expect-value") {
    const SeriesExpr e = lookup();
    const Ball b = eval_at(e, d.point, digit_tolerance(d.digits));
    if (!matches_oracle(b, d.decimal, d.digits, out.detail)) out.status = CheckStatus::Fail;
    return;
  }
  if (d.head == "expect-const") {
    const ConstantResult r = constant_by_name(d.name, d.digits);
    if (!matches_oracle(r.ball, d.decimal, d.digits, out.detail)) out.status = CheckStatus::Fail;
    return;
  }
  if (d.head == "expect-overlap") {
    const Ball a = const_expr(d.operands[0], d.digits);
    const Ball b = const_expr(d.operands[1], d.digits);
    out.detail = a.to_string(d.digits) + " vs " + b.to_string(d.digits);
    if (!a.overlaps(b)) out.status = CheckStatus::Fail;
    return;
  }
  out.status = CheckStatus::Diagnostic;
  out.detail = "unknown directive";
}

}  // namespace

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.status == CheckStatus::Pass; });
}

int SuiteReport::exit_code() const {
  int code = 0;
  for (const auto& c : checks) {
    switch (c.status) {
      case CheckStatus::Pass: break;
      case CheckStatus::Diagnostic: code = std::max(code, 1); break;
      case CheckStatus::Precondition: code = std::max(code, 2); break;
      case CheckStatus::Fail: code = std::max(code, 3); break;
    }
  }
  return code;
}

SuiteReport run_derivation(const std::string& source, std::string_view text) {
  SuiteReport report;
  auto parsed = dsl::parse_file(text);
  if (auto* diag = std::get_if<dsl::Diagnostic>(&parsed)) {
    report.checks.push_back({source, "parse", CheckStatus::Diagnostic, diag->to_string(), 0});
    return report;
  }
  dsl::Env env;
  for (const auto& d : std::get<dsl::DerivationFile>(parsed).directives) {
    CheckOutcome out;
    out.source = source;
    out.label = std::to_string(d.span.line) + ": " + d.head + (d.name.empty() ? "" : " " + d.name);
    const auto t0 = Clock::now();
    try {
      run_directive(d, env, out);
    } catch (const Error& e) {
      out.status = CheckStatus::Precondition;
      out.detail = e.what();
    } catch (const std::exception& e) {
      out.status = CheckStatus::Fail;
      out.detail = e.what();
    }
    out.millis = since(t0);
    report.checks.push_back(std::move(out));
  }
  return report;
}

std::string default_derivations_dir() {
  if (const char* env = std::getenv("IAN_DERIVATIONS")) return env;
  return IAN_DERIVATIONS_DIR;
}

SuiteReport verify_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  SuiteReport report;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    report.checks.push_back({dir, "open", CheckStatus::Diagnostic, "not a directory", 0});
    return report;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".iad") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    SuiteReport r = run_derivation(p.filename().string(), buf.str());
    report.checks.insert(report.checks.end(), r.checks.begin(), r.checks.end());
  }
  if (files.empty()) report.checks.push_back({dir, "open", CheckStatus::Diagnostic, "no .iad files", 0});
  return report;
}

SuiteReport verify_property(std::uint64_t seed) {
  SuiteReport report;
  auto record = [&](const std::string& label, auto&& body) {
    CheckOutcome out{"property", label, CheckStatus::Pass, "", 0};
    const auto t0 = Clock::now();
    try {
      std::string failure = body();
      if (!failure.empty()) {
        out.status = CheckStatus::Fail;
        out.detail = failure;
      }
    } catch (const std::exception& e) {
      out.status = CheckStatus::Fail;
      out.detail = std::string("unexpected exception: ") + e.what();
    }
    out.millis = since(t0);
    report.checks.push_back(std::move(out));
  };

  record("majorant soundness (60 DAGs, order 16)", [&]() -> std::string {
    DagGenerator gen(seed, DagOptions{4, 2, true, true});
    for (int k = 0; k < 60; ++k) {
      SeriesExpr e = gen.expr(gen.uniform(1, 2));
      MajorantCheck c = validate_majorant(e, majorant_of(e), 16);
      if (!c.ok) return "violation at " + c.witness->to_string() + " for a " + to_string(e.kind()) + " node";
    }
    return "";
  });

  record("ball containment (30 points)", [&]() -> std::string {
    DagGenerator gen(seed + 1, DagOptions{4, 2, true, true});
    const Rational tol = pow2(-20);
    for (int k = 0; k < 30; ++k) {
      SeriesExpr e = gen.expr(gen.uniform(1, 2));
      std::vector<Rational> x = gen.point_inside(e, Rational(1, 4));
      EvalReport r = eval_at_report(e, x, tol);
      BallField f{4 * r.prec};
      const int N = 4 * r.order;
      Ball brute = kernels::partial_sum(f, *ball_trunc(e, 4 * r.prec, N), x, N);
      if (!r.value.contains(brute)) return "enclosure misses the partial sum of order " + std::to_string(N);
    }
    return "";
  });

  record("inverse residual (10 cases, order 12)", [&]() -> std::string {
    DagGenerator gen(seed + 2);
    for (int k = 0; k < 10; ++k) {
      SeriesExpr f = gen.invertible();
      SeriesExpr c = compose_series(f, {inverse_series(f)});
      auto t = exact_trunc(c, 12);
      for (const auto& [alpha, v] : t->terms) {
        if (static_cast<int>(alpha.degree()) > 12) break;
        if (alpha != MultiIndex{1} || v != 1) return "f(g(X)) != X at " + alpha.to_string();
      }
    }
    return "";
  });

  record("implicit residual (10 cases, order 8)", [&]() -> std::string {
    DagGenerator gen(seed + 3);
    for (int k = 0; k < 10; ++k) {
      const int n = gen.uniform(1, 2), m = gen.uniform(1, 2);
      auto F = gen.implicit_system(n, m);
      auto g = implicit_series(F);
      std::vector<SeriesExpr> args;
      for (int i = 0; i < n; ++i) args.push_back(poly(Polynomial::variable(n, i)));
      args.insert(args.end(), g.begin(), g.end());
      for (const auto& Fi : F) {
        auto t = exact_trunc(compose_series(Fi, args), 8);
        for (const auto& [alpha, v] : t->terms) {
          if (static_cast<int>(alpha.degree()) <= 8) return "F(X, g(X)) != 0 at " + alpha.to_string();
        }
      }
    }
    return "";
  });

  record("Weierstrass identities (20 cases)", [&]() -> std::string {
    DagGenerator gen(seed + 4);
    for (int k = 0; k < 20; ++k) {
      const int n = gen.uniform(2, 3), d = gen.uniform(1, 3);
      const Window w{gen.uniform(2, 4), d + gen.uniform(1, 3)};
      SeriesExpr f = poly(gen.regular_polynomial(n, d, 4));
      SeriesExpr g = poly(gen.polynomial(n, 4, 5, false));
      DivisionResult div = wdiv(f, g, d, w);
      auto ft = exact_trunc(f, w.nx + w.nn);
      auto gt = exact_trunc(g, w.nx + w.nn);
      Trunc<Rational> fh = window_mul(*ft, div.h, w);
      bool ok = true;
      for_each_monomial(n, w.nx + w.nn, [&](const MultiIndex& alpha) {
        if (!w.contains(alpha)) return;
        Rational lhs = gt->find(alpha) ? *gt->find(alpha) : Rational(0);
        Rational rhs = (fh.find(alpha) ? *fh.find(alpha) : Rational(0)) +
                       (div.remainder.find(alpha) ? *div.remainder.find(alpha) : Rational(0));
        ok = ok && lhs == rhs;
      });
      if (!ok) return "g != f h + r on the window";
    }
    return "";
  });

  record("real root refinement", [&]() -> std::string {
    Polynomial p(1);
    p.add_term(MultiIndex{2}, 1);
    p.add_term(MultiIndex{0}, -2);
    auto roots = isolate_real_roots(p);
    if (roots.size() != 2) return "x^2 - 2 should have two real roots";
    Ball b = refine_root(p, roots[1], pow10(-20));
    // sqrt(2) squared must land in the image ball
    Ball sq = mul(b, b, 256);
    if (!sq.contains(Rational(2))) return "enclosure of sqrt(2) is wrong";
    return "";
  });
  return report;
}

}  // namespace ian
