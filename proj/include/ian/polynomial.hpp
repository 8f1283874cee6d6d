#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ian/multi_index.hpp"
#include "ian/rational.hpp"

namespace ian {

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  Polynomial() = default;
  explicit Polynomial(int arity) : arity_(arity) {}
  Polynomial(int arity, Terms terms);

  static Polynomial constant(int arity, const Rational& c);
  static Polynomial variable(int arity, int var);

  int arity() const noexcept { return arity_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const;  // total degree, -1 for zero
  int degree_in(int var) const;

  Rational coeff(const MultiIndex& alpha) const;
  Rational constant_term() const;
  void add_term(const MultiIndex& alpha, const Rational& c);

  Rational evaluate(std::span<const Rational> x) const;
  /// Upper bound of |p| on the closed polydisc with the given radii, i.e.
  /// sum |c_alpha| rho^alpha. When skip_constant is set the constant term is left out.
  Rational abs_sum(std::span<const Rational> rho, bool skip_constant = false) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& q) const;
  Polynomial derivative(int var) const;
  Polynomial pow(unsigned k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  int arity_ = 0;
  Terms terms_;
};

}  // namespace ian
