#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ian {

inline constexpr int kMaxArity = 8;

// Exponent vector of a monomial. Ordered by total degree first, then
// lexicographically, so std::map iteration walks a series degree by degree.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int arity);
  MultiIndex(std::initializer_list<std::uint32_t> exps);
  explicit MultiIndex(std::span<const std::uint32_t> exps);

  static MultiIndex unit(int arity, int var, std::uint32_t power = 1);

  int arity() const noexcept { return n_; }
  std::uint32_t degree() const noexcept { return degree_; }

  std::uint32_t operator[](int i) const noexcept { return e_[static_cast<size_t>(i)]; }
  void set(int i, std::uint32_t v) noexcept {
    degree_ = degree_ - e_[static_cast<size_t>(i)] + v;
    e_[static_cast<size_t>(i)] = v;
  }

  bool divides(const MultiIndex& other) const noexcept;  // componentwise <=
  MultiIndex operator+(const MultiIndex& o) const noexcept;
  MultiIndex operator-(const MultiIndex& o) const noexcept;  // requires divides

  MultiIndex erase(int var) const;
  MultiIndex insert(int var, std::uint32_t value) const;

  std::vector<std::uint32_t> to_vector() const { return {e_.begin(), e_.begin() + n_}; }
  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    for (int i = 0; i < a.n_; ++i) {
      // larger leading exponent first within a degree
      if (auto c = b.e_[static_cast<size_t>(i)] <=> a.e_[static_cast<size_t>(i)]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::array<std::uint32_t, kMaxArity> e_{};
  std::uint32_t degree_ = 0;
  std::uint8_t n_ = 0;
};

/// Calls fn(alpha) for every exponent vector of the given arity with total
/// degree <= max_degree, in MultiIndex order.
void for_each_monomial(int arity, int max_degree, const std::function<void(const MultiIndex&)>& fn);

/// All exponent vectors of exact total degree d.
std::vector<MultiIndex> monomials_of_degree(int arity, int d);

}  // namespace ian
