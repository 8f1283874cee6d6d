#include "ian/rational.hpp"

#include <cctype>

#include "ian/error.hpp"

namespace ian {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NonUnitReciprocal: return "NonUnitReciprocal";
    case ErrorKind::TranslationOutsideDomain: return "TranslationOutsideDomain";
    case ErrorKind::NonvanishingSubstitution: return "NonvanishingSubstitution";
    case ErrorKind::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorKind::InconsistentDefinition: return "InconsistentDefinition";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotIsolating: return "NotIsolating";
    case ErrorKind::DegenerateDiscriminant: return "DegenerateDiscriminant";
    case ErrorKind::MajorantUnavailable: return "MajorantUnavailable";
    case ErrorKind::PointOutsideRadii: return "PointOutsideRadii";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NonpositiveArgument: return "NonpositiveArgument";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s) || s.size() > 4096) {
    throw Error(ErrorKind::InvalidArgument, "malformed integer '" + std::string(s) + "'");
  }
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    throw Error(ErrorKind::InvalidArgument, "malformed denominator in '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

long floor_log2(const Rational& q) {
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "floor_log2 of non-positive value");
  long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  // 2^e is within a factor 2 of q; fix up.
  while (pow2(e) > q) --e;
  while (pow2(e + 1) <= q) ++e;
  return e;
}

std::string to_decimal(const Rational& q, int digits) {
  Rational scaled = q * pow10(digits);
  // round half away from zero
  Rational a = abs(scaled);
  Integer n = a.get_num();
  Integer d = a.get_den();
  Integer twice = 2 * n + d;
  Integer r = twice / (2 * d);
  std::string s = r.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  if (q < 0 && r != 0) s.insert(0, "-");
  return s;
}

std::string to_sci_upper(const Rational& q) {
  Rational a = abs(q);
  if (a == 0) return "0";
  // find k with 10 <= a*10^k < 100
  long k = 0;
  while (a * pow10(k) >= 100) --k;
  while (a * pow10(k) < 10) ++k;
  Rational scaled = a * pow10(k);
  Integer m = scaled.get_num() / scaled.get_den();
  if (Rational(m) < scaled) m += 1;
  if (m == 100) {
    m = 10;
    --k;
  }
  std::string ms = m.get_str();
  long exponent = 1 - k;
  return ms.substr(0, 1) + "." + ms.substr(1) + "e" + std::to_string(exponent);
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view ip = text.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
    throw Error(ErrorKind::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
  }
  std::string digits = std::string(ip) + std::string(fp);
  if (digits.empty()) digits = "0";
  Rational v(Integer(digits, 10));
  v /= pow10(static_cast<long>(fp.size()));
  return negative ? Rational(-v) : v;
}

}  // namespace ian
