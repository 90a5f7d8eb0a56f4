#pragma once

#include <map>
#include <utility>

#include "rational.hpp"

namespace ivm {

/// Finite formal sum over an ordered basis with exact coefficients. Zero
/// coefficients are never stored.
template <class Key>
class SparseVec {
 public:
  using Map = std::map<Key, Rational>;

  SparseVec() = default;
  SparseVec(const Key& k, Rational c) { add(k, std::move(c)); }

  void add(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void axpy(const Rational& s, const SparseVec& other) {
    if (s == 0) return;
    for (const auto& [k, c] : other.terms_) add(k, s * c);
  }

  SparseVec& operator+=(const SparseVec& o) { axpy(1, o); return *this; }
  SparseVec& operator-=(const SparseVec& o) { axpy(-1, o); return *this; }
  SparseVec& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    else for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const Rational& s, SparseVec a) { return a *= s; }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms_ == b.terms_; }

  Rational coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

 private:
  Map terms_;
};

}  // namespace ivm
