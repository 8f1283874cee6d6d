#include "ian/polynomial.hpp"

#include <algorithm>

#include "ian/error.hpp"

namespace ian {

Polynomial::Polynomial(int arity, Terms terms) : arity_(arity) {
  for (auto& [alpha, c] : terms) {
    if (alpha.arity() != arity) throw Error(ErrorKind::ArityMismatch, "term arity differs from polynomial arity");
    if (c != 0) terms_.emplace(alpha, c);
  }
}

Polynomial Polynomial::constant(int arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(MultiIndex(arity), c);
  return p;
}

Polynomial Polynomial::variable(int arity, int var) {
  Polynomial p(arity);
  p.add_term(MultiIndex::unit(arity, var), Rational(1));
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

int Polynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, static_cast<int>(alpha[var]));
  return d;
}

Rational Polynomial::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coeff(MultiIndex(arity_)); }

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
  if (alpha.arity() != arity_) throw Error(ErrorKind::ArityMismatch, "term arity differs from polynomial arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != arity_) throw Error(ErrorKind::ArityMismatch, "evaluation point size");
  Rational sum(0);
  for (const auto& [alpha, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < arity_; ++i) {
      if (alpha[i]) t *= ian::pow(x[static_cast<size_t>(i)], alpha[i]);
    }
    sum += t;
  }
  return sum;
}

Rational Polynomial::abs_sum(std::span<const Rational> rho, bool skip_constant) const {
  Rational sum(0);
  for (const auto& [alpha, c] : terms_) {
    if (skip_constant && alpha.degree() == 0) continue;
    Rational t = ian::abs(c);
    for (int i = 0; i < arity_; ++i) {
      if (alpha[i]) t *= ian::pow(rho[static_cast<size_t>(i)], alpha[i]);
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.arity_ != arity_) throw Error(ErrorKind::ArityMismatch, "polynomial sum");
  Polynomial r = *this;
  for (const auto& [alpha, c] : o.terms_) r.add_term(alpha, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [alpha, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.arity_ != arity_) throw Error(ErrorKind::ArityMismatch, "polynomial product");
  Polynomial r(arity_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) r.add_term(a + b, ca * cb);
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& q) const {
  Polynomial r(arity_);
  if (q == 0) return r;
  for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha, c * q);
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(arity_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[var] == 0) continue;
    MultiIndex b = alpha;
    b.set(var, alpha[var] - 1);
    r.add_term(b, c * alpha[var]);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(arity_, Rational(1));
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [alpha, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += ian::to_string(c);
    for (int i = 0; i < arity_; ++i) {
      if (alpha[i] == 0) continue;
      s += "*X" + std::to_string(i + 1);
      if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
    }
  }
  return s;
}

}  // namespace ian
