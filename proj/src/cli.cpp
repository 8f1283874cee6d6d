#include "ian/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

#include "ian/constants.hpp"
#include "ian/dsl.hpp"
#include "ian/error.hpp"
#include "ian/eval.hpp"
#include "ian/majorant.hpp"
#include "ian/verify.hpp"
#include "ian/weierstrass.hpp"

namespace ian {

namespace {

using json = nlohmann::ordered_json;

// Carries an exit code out of a subcommand.
struct Exit {
  int code;
  std::string message;
};

int default_digits() {
  if (const char* v = std::getenv("IAN_DEFAULT_DIGITS")) {
    char* end = nullptr;
    const long d = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && d >= 1 && d <= 1000) return static_cast<int>(d);
  }
  return 30;
}

struct Loaded {
  SeriesExpr expr;
  std::string name;
  std::string hash;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{1, "cannot read '" + path + "'"};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void diagnose(const std::string& source, const dsl::Diagnostic& d) {
  throw Exit{d.kind == dsl::DiagnosticKind::Precondition ? 2 : 1, source + ":" + d.to_string()};
}

bool is_derivation_file(std::string_view text) {
  auto r = dsl::read_all(text);
  const auto* items = std::get_if<std::vector<dsl::Sexp>>(&r);
  if (!items || items->empty()) return false;
  const dsl::Sexp& s = items->front();
  if (!s.is_list || s.items.empty() || s.items[0].is_list) return false;
  const std::string& h = s.items[0].atom;
  return h == "def" || h.rfind("expect-", 0) == 0;
}

Loaded load_text(const std::string& source, const std::string& text, const std::string& wanted) {
  if (!is_derivation_file(text)) {
    auto p = dsl::parse(text);
    if (auto* d = std::get_if<dsl::Diagnostic>(&p)) diagnose(source, *d);
    const std::string canonical = dsl::format(std::get<dsl::Ast>(p));
    auto e = dsl::lower(std::get<dsl::Ast>(p));
    if (auto* d = std::get_if<dsl::Diagnostic>(&e)) diagnose(source, *d);
    return {std::get<SeriesExpr>(e), wanted.empty() ? "expr" : wanted, dsl::hash_hex(canonical)};
  }
  auto f = dsl::parse_file(text);
  if (auto* d = std::get_if<dsl::Diagnostic>(&f)) diagnose(source, *d);
  dsl::Env env;
  std::string last, canonical;
  for (const auto& d : std::get<dsl::DerivationFile>(f).directives) {
    if (d.head != "def") continue;
    auto e = dsl::lower(d.expr, env);
    if (auto* diag = std::get_if<dsl::Diagnostic>(&e)) diagnose(source, *diag);
    env[d.name] = std::get<SeriesExpr>(e);
    canonical += "(def " + d.name + " " + dsl::format(d.expr) + ")\n";
    last = d.name;
    if (d.name == wanted) break;
  }
  const std::string name = wanted.empty() ? last : wanted;
  auto it = env.find(name);
  if (it == env.end()) throw Exit{1, source + ": no definition named '" + name + "'"};
  return {it->second, name, dsl::hash_hex(canonical)};
}

Loaded load(const std::string& input, const std::string& expr, const std::string& wanted) {
  if (!expr.empty()) return load_text("<expr>", expr, wanted);
  if (input.empty()) throw Exit{1, "an input file or -e expression is required"};
  return load_text(input, read_text(input), wanted);
}

// Files for wdiv may also be given inline.
Loaded load_operand(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) return load_text(arg, read_text(arg), "");
  return load_text("<expr>", arg, "");
}

std::vector<Rational> parse_list(const std::string& text, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const Error&) {
      throw Exit{1, std::string("malformed ") + what + " '" + item + "'"};
    }
  }
  return out;
}

Window parse_orders(const std::string& text) {
  auto v = parse_list(text, "orders");
  if (v.size() != 2 || v[0].get_den() != 1 || v[1].get_den() != 1 || v[0] < 0 || v[1] < -1 || v[0] > 64 || v[1] > 64) {
    throw Exit{1, "--orders expects A,B with A in [0, 64] and B in [-1, 64] (-1: d + 8)"};
  }
  return Window{static_cast<int>(v[0].get_num().get_si()), static_cast<int>(v[1].get_num().get_si())};
}

// Decimal midpoint and a radius that also covers the decimal rounding.
std::pair<std::string, std::string> ball_text(const Ball& b, int digits) {
  const std::string mid = to_decimal(b.mid().to_rational(), digits);
  const Rational printed = parse_decimal(mid);
  const Rational rad = b.rad().to_rational() + abs(Rational(b.mid().to_rational() - printed));
  return {mid, to_sci_upper(rad)};
}

json ball_json(const std::string& name, const Ball& b, int digits, const std::string& hash) {
  auto [mid, rad] = ball_text(b, digits);
  json j;
  j["kind"] = "ball";
  j["name"] = name;
  j["mid"] = mid;
  j["rad"] = rad;
  j["digits"] = digits;
  j["derivation_hash"] = hash;
  return j;
}

std::string coeff_text(const Coefficient& c, int digits) {
  if (const auto* q = std::get_if<Rational>(&c)) return to_string(*q);
  auto [mid, rad] = ball_text(std::get<Ball>(c), digits);
  return mid + " +/- " + rad;
}

void put_coeff(json& mid, json& rad, const std::string& key, const Coefficient& c, int digits) {
  if (const auto* q = std::get_if<Rational>(&c)) {
    mid[key] = to_string(*q);
    rad[key] = "0";
  } else {
    auto [m, r] = ball_text(std::get<Ball>(c), digits);
    mid[key] = m;
    rad[key] = r;
  }
}

std::string index_key(const MultiIndex& a) { return a.to_string(); }

void print_trunc(std::ostream& out, const std::string& label, const Trunc<Rational>& t) {
  out << label << ":\n";
  if (t.terms.empty()) out << "  0\n";
  for (const auto& [alpha, c] : t.terms) out << "  " << alpha.to_string() << "  " << to_string(c) << "\n";
}

json trunc_json(const Trunc<Rational>& t) {
  json j = json::object();
  for (const auto& [alpha, c] : t.terms) j[index_key(alpha)] = to_string(c);
  return j;
}

json prep_json(const std::string& name, json mid, int digits, const std::string& hash) {
  json j;
  j["kind"] = "prep";
  j["name"] = name;
  j["mid"] = std::move(mid);
  j["rad"] = "0";
  j["digits"] = digits;
  j["derivation_hash"] = hash;
  return j;
}

const char* status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Diagnostic: return "DIAG";
    case CheckStatus::Precondition: return "PREC";
  }
  return "?";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified evaluation of integrated algebraic power series"};
  app.require_subcommand(1);

  std::string input, expr, name, at, orders = "8,-1", suite = "paper", dir = default_derivations_dir(), focus;
  std::string f_arg, g_arg, const_name;
  int digits = default_digits(), order = 8, d = 1;
  std::uint64_t seed = 1;
  bool as_json = false, verbose = false;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "Derivation file (.iad) or expression file");
    sub->add_option("-e,--expr", expr, "Inline expression");
    sub->add_option("--name", name, "Definition to use from a derivation file (default: last)");
    sub->add_flag("--json", as_json, "Machine-readable output");
  };

  auto* eval_cmd = app.add_subcommand("eval", "Enclose the value of a series at a point");
  add_input(eval_cmd);
  eval_cmd->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1, 1000));
  eval_cmd->add_option("--at", at, "Point, comma separated rationals (default 0)");

  auto* coeffs_cmd = app.add_subcommand("coeffs", "Print coefficients up to a total degree");
  add_input(coeffs_cmd);
  coeffs_cmd->add_option("--order", order, "Total degree")->check(CLI::Range(0, 4096));
  coeffs_cmd->add_option("--digits", digits, "Digits for certified coefficients")->check(CLI::Range(1, 1000));

  auto* const_cmd = app.add_subcommand("const", "Named constant from the registry");
  const_cmd->add_option("name", const_name, "pi, log2, arcsin_half, dilog_half, e, log:<q>, sin:<q>")->required();
  const_cmd->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1, 1000));
  const_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* wprep_cmd = app.add_subcommand("wprep", "Weierstrass preparation f = P u on a window");
  add_input(wprep_cmd);
  wprep_cmd->add_option("--d", d, "Regularity order")->required()->check(CLI::Range(0, 64));
  wprep_cmd->add_option("--orders", orders, "Window A,B: |alpha'| <= A, alpha_n <= B");

  auto* wdiv_cmd = app.add_subcommand("wdiv", "Weierstrass division g = f h + r on a window");
  wdiv_cmd->add_option("f", f_arg, "Divisor (file or inline expression)")->required();
  wdiv_cmd->add_option("g", g_arg, "Dividend (file or inline expression)")->required();
  wdiv_cmd->add_option("--d", d, "Regularity order")->required()->check(CLI::Range(0, 64));
  wdiv_cmd->add_option("--orders", orders, "Window A,B");
  wdiv_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", suite, "paper or property")->check(CLI::IsMember({"paper", "property"}));
  verify_cmd->add_option("--dir", dir, "Directory of .iad derivation files");
  verify_cmd->add_option("--seed", seed, "Seed for the property suite");
  verify_cmd->add_flag("-v,--verbose", verbose, "List passing checks too");

  auto* maj_cmd = app.add_subcommand("majorant", "Print a certified geometric majorant");
  add_input(maj_cmd);
  maj_cmd->add_option("--focus", focus, "Radii of interest, comma separated");

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*eval_cmd) {
      Loaded l = load(input, expr, name);
      std::vector<Rational> x = at.empty() ? std::vector<Rational>(static_cast<size_t>(l.expr.arity()), Rational(0))
                                           : parse_list(at, "point");
      if (static_cast<int>(x.size()) != l.expr.arity()) throw Exit{1, "point size differs from the series arity"};
      Ball b = eval_at(l.expr, x, digit_tolerance(digits));
      if (as_json) {
        out << ball_json(l.name, b, digits, l.hash).dump() << "\n";
      } else {
        auto [mid, rad] = ball_text(b, digits);
        out << mid << " +/- " << rad << "\n";
      }
    } else if (*coeffs_cmd) {
      Loaded l = load(input, expr, name);
      TruncatedSeries t = truncate(l.expr, order, digit_tolerance(digits));
      if (as_json) {
        json mid = json::object(), rad = json::object();
        for (const auto& [alpha, c] : t.coeffs) put_coeff(mid, rad, index_key(alpha), c, digits);
        json j;
        j["kind"] = "coeffs";
        j["name"] = l.name;
        j["mid"] = std::move(mid);
        j["rad"] = std::move(rad);
        j["digits"] = digits;
        j["derivation_hash"] = l.hash;
        out << j.dump() << "\n";
      } else {
        for (const auto& [alpha, c] : t.coeffs) out << alpha.to_string() << "  " << coeff_text(c, digits) << "\n";
      }
    } else if (*const_cmd) {
      ConstantResult r = constant_by_name(const_name, digits);
      if (as_json) {
        out << ball_json(r.name, r.ball, digits, r.derivation_hash).dump() << "\n";
      } else {
        auto [mid, rad] = ball_text(r.ball, digits);
        out << r.name << " = " << mid << " +/- " << rad << "\n";
      }
    } else if (*wprep_cmd) {
      Loaded l = load(input, expr, name);
      PreparationResult p = wprep(l.expr, d, parse_orders(orders));
      if (as_json) {
        json mid;
        mid["P"] = trunc_json(p.P);
        mid["u"] = trunc_json(p.u);
        out << prep_json(l.name, std::move(mid), digits, l.hash).dump() << "\n";
      } else {
        print_trunc(out, "P", p.P);
        print_trunc(out, "u", p.u);
      }
    } else if (*wdiv_cmd) {
      Loaded f = load_operand(f_arg);
      Loaded g = load_operand(g_arg);
      DivisionResult r = wdiv(f.expr, g.expr, d, parse_orders(orders));
      const std::string hash = dsl::hash_hex(f.hash + "/" + g.hash);
      if (as_json) {
        json mid;
        mid["h"] = trunc_json(r.h);
        mid["r"] = trunc_json(r.remainder);
        out << prep_json("wdiv", std::move(mid), digits, hash).dump() << "\n";
      } else {
        print_trunc(out, "h", r.h);
        print_trunc(out, "r", r.remainder);
      }
    } else if (*verify_cmd) {
      SuiteReport rep = suite == "paper" ? verify_corpus(dir) : verify_property(seed);
      std::map<std::string, std::pair<int, double>> per_source;
      for (const auto& c : rep.checks) {
        auto& [count, millis] = per_source[c.source];
        ++count;
        millis += c.millis;
        if (c.status == CheckStatus::Pass && !verbose) continue;
        out << status_text(c.status) << "  " << c.source << "  " << c.label;
        if (c.status != CheckStatus::Pass && !c.detail.empty()) out << "  -- " << c.detail;
        out << "\n";
      }
      for (const auto& [source, stats] : per_source) {
        out << "  " << source << ": " << stats.first << " checks, " << static_cast<long>(stats.second) << " ms\n";
      }
      const int code = rep.exit_code();
      out << (code == 0 ? "all checks passed" : "verification failed") << " (" << rep.checks.size() << " checks)\n";
      return code;
    } else if (*maj_cmd) {
      Loaded l = load(input, expr, name);
      std::vector<Rational> f = focus.empty() ? std::vector<Rational>(static_cast<size_t>(l.expr.arity()), Rational(0))
                                              : parse_list(focus, "focus");
      if (static_cast<int>(f.size()) != l.expr.arity()) throw Exit{1, "focus size differs from the series arity"};
      Majorant m = majorant_of(l.expr, f);
      if (as_json) {
        json j;
        j["kind"] = "majorant";
        j["name"] = l.name;
        j["M"] = to_string(m.M);
        j["radii"] = json::array();
        for (const auto& r : m.radii) j["radii"].push_back(to_string(r));
        j["derivation_hash"] = l.hash;
        out << j.dump() << "\n";
      } else {
        out << "M = " << to_string(m.M) << "\n";
        for (size_t i = 0; i < m.radii.size(); ++i) out << "r" << i + 1 << " = " << to_string(m.radii[i]) << "\n";
      }
    }
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ian
