#include "ian/multi_index.hpp"

#include "ian/error.hpp"

namespace ian {

namespace {
void check_arity(size_t n) {
  if (n > static_cast<size_t>(kMaxArity)) {
    throw Error(ErrorKind::Unsupported, "arity " + std::to_string(n) + " exceeds " + std::to_string(kMaxArity));
  }
}
}  // namespace

MultiIndex::MultiIndex(int arity) {
  if (arity < 0) throw Error(ErrorKind::ArityMismatch, "negative arity");
  check_arity(static_cast<size_t>(arity));
  n_ = static_cast<std::uint8_t>(arity);
}

MultiIndex::MultiIndex(std::initializer_list<std::uint32_t> exps)
    : MultiIndex(std::span<const std::uint32_t>(exps.begin(), exps.size())) {}

MultiIndex::MultiIndex(std::span<const std::uint32_t> exps) {
  check_arity(exps.size());
  n_ = static_cast<std::uint8_t>(exps.size());
  for (size_t i = 0; i < exps.size(); ++i) {
    e_[i] = exps[i];
    degree_ += exps[i];
  }
}

MultiIndex MultiIndex::unit(int arity, int var, std::uint32_t power) {
  MultiIndex m(arity);
  m.set(var, power);
  return m;
}

bool MultiIndex::divides(const MultiIndex& other) const noexcept {
  for (int i = 0; i < n_; ++i) {
    if (e_[static_cast<size_t>(i)] > other.e_[static_cast<size_t>(i)]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const noexcept {
  MultiIndex r = *this;
  for (int i = 0; i < n_; ++i) r.e_[static_cast<size_t>(i)] += o.e_[static_cast<size_t>(i)];
  r.degree_ = degree_ + o.degree_;
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const noexcept {
  MultiIndex r = *this;
  for (int i = 0; i < n_; ++i) r.e_[static_cast<size_t>(i)] -= o.e_[static_cast<size_t>(i)];
  r.degree_ = degree_ - o.degree_;
  return r;
}

MultiIndex MultiIndex::erase(int var) const {
  MultiIndex r(n_ - 1);
  for (int i = 0, j = 0; i < n_; ++i) {
    if (i == var) continue;
    r.set(j++, e_[static_cast<size_t>(i)]);
  }
  return r;
}

MultiIndex MultiIndex::insert(int var, std::uint32_t value) const {
  MultiIndex r(n_ + 1);
  for (int i = 0, j = 0; i <= n_; ++i) {
    if (i == var) {
      r.set(i, value);
    } else {
      r.set(i, e_[static_cast<size_t>(j++)]);
    }
  }
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int i = 0; i < n_; ++i) {
    if (i) s += ' ';
    s += std::to_string(e_[static_cast<size_t>(i)]);
  }
  return s + ")";
}

namespace {
void rec_degree(MultiIndex& m, int var, int remaining, std::vector<MultiIndex>& out) {
  const int n = m.arity();
  if (var == n - 1) {
    m.set(var, static_cast<std::uint32_t>(remaining));
    out.push_back(m);
    m.set(var, 0);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    m.set(var, static_cast<std::uint32_t>(v));
    rec_degree(m, var + 1, remaining - v, out);
  }
  m.set(var, 0);
}
}  // namespace

std::vector<MultiIndex> monomials_of_degree(int arity, int d) {
  std::vector<MultiIndex> out;
  if (arity == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  MultiIndex m(arity);
  rec_degree(m, 0, d, out);
  return out;
}

void for_each_monomial(int arity, int max_degree, const std::function<void(const MultiIndex&)>& fn) {
  for (int d = 0; d <= max_degree; ++d) {
    for (const auto& m : monomials_of_degree(arity, d)) fn(m);
    if (arity == 0) break;
  }
}

}  // namespace ian
