#include "module.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace ivm {

Lambda operator+(const Lambda& a, const Lambda& b) {
  Lambda s;
  s.h.resize(std::max(a.h.size(), b.h.size()));
  for (std::size_t i = 0; i < s.h.size(); ++i) {
    if (i < a.h.size()) s.h[i] += a.h[i];
    if (i < b.h.size()) s.h[i] += b.h[i];
  }
  s.c = a.c + b.c;
  s.d = a.d + b.d;
  return s;
}

WeightModule::WeightModule(AlgebraPtr alg, Lambda lambda) : alg_(std::move(alg)), lambda_(std::move(lambda)) {
  const auto n = static_cast<std::size_t>(alg_->rank());
  if (lambda_.h.empty()) lambda_.h.assign(n, 0);
  if (lambda_.h.size() != n) throw std::invalid_argument("weight has wrong number of Cartan values");
  // lambda(b_i) = sum_k B_ik lambda(h_k)
  lambda_on_basis_.assign(n, 0);
  const Matrix& b = alg_->cartan_basis();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) lambda_on_basis_[i] += b(i, k) * lambda_.h[k];
}

std::string WeightModule::describe(const Key& k) const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << "]";
  return os.str();
}

Rational WeightModule::cartan_eigenvalue(int i, const Root& s) const {
  Rational v = lambda_on_basis_[static_cast<std::size_t>(i)];
  // sum_j s_j alpha_j(b_i); alpha_j(b_i) = sum_k B_ik A_jk
  const auto& a = alg_->cartan_matrix();
  const Matrix& b = alg_->cartan_basis();
  for (std::size_t j = 0; j < s.finite.size(); ++j) {
    if (s.finite[j] == 0) continue;
    Rational aj = 0;
    for (std::size_t k = 0; k < s.finite.size(); ++k) aj += b(static_cast<std::size_t>(i), k) * a[j][k];
    v += s.finite[j] * aj;
  }
  return v;
}

Rational WeightModule::cartan_eigenvalue(int i, const Key& k) const { return cartan_eigenvalue(i, shift(k)); }

Vec WeightModule::act(const Mode& m, const Key& k) const {
  switch (m.kind) {
    case ModeKind::Central:
      return Vec(k, charge());
    case ModeKind::Derivation:
      return Vec(k, lambda_.d + shift(k).level);
    case ModeKind::Cartan:
      if (m.level == 0) return Vec(k, cartan_eigenvalue(m.index, k));
      break;
    case ModeKind::Real:
      break;
  }
  if (!acts(m)) throw std::logic_error("mode " + alg_->mode_name(m) + " does not act on this module");
  return act_nondiagonal(m, k);
}

Vec WeightModule::act(const Mode& m, const Vec& v) const {
  Vec out;
  for (const auto& [k, c] : v) out.axpy(c, act(m, k));
  return out;
}

Vec WeightModule::act(const AlgElement& x, const Vec& v) const {
  Vec out;
  for (const auto& [m, c] : x) out.axpy(c, act(m, v));
  return out;
}

std::map<Root, int> character(const WeightModule& m, const Box& box) {
  std::map<Root, int> ch;
  for (const auto& k : m.basis(box)) ++ch[m.shift(k)];
  return ch;
}

Root homogeneous_shift(const WeightModule& m, const Vec& v) {
  if (v.empty()) throw std::invalid_argument("zero vector has no weight");
  const Root r = m.shift(v.begin()->first);
  for (const auto& [k, c] : v)
    if (!(m.shift(k) == r)) throw std::invalid_argument("vector is not a weight vector");
  return r;
}

BracketSampleReport sample_bracket_identity(const WeightModule& m, const Box& box, int mode_bound, int samples,
                                            std::uint64_t seed) {
  BracketSampleReport rep;
  std::vector<Mode> modes;
  for (const auto& x : m.algebra().modes_in_box(mode_bound))
    if (m.acts(x)) modes.push_back(x);
  const auto basis = m.basis(box);
  if (modes.empty() || basis.empty()) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_mode(0, modes.size() - 1), pick_key(0, basis.size() - 1);
  const int limit = box.depth + mode_bound;
  auto inside = [&](const Vec& v) {
    for (const auto& [k, c] : v)
      if (m.degree(k) > limit) return false;
    return true;
  };
  for (int i = 0; i < samples; ++i) {
    const Mode x = modes[pick_mode(rng)], y = modes[pick_mode(rng)];
    const Vec b(basis[pick_key(rng)], 1);
    ++rep.samples;
    const Vec yb = m.act(y, b), xb = m.act(x, b);
    if (!inside(yb) || !inside(xb)) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    const Vec d = m.act(x, yb) - m.act(y, xb) - m.act(m.algebra().bracket(x, y), b);
    if (!d.empty()) ++rep.failures;
  }
  return rep;
}

Key concat_keys(const Key& a, const Key& b) {
  Key k(a);
  k.insert(k.end(), b.begin(), b.end());
  return k;
}

Key encode_pair(const Key& a, const Key& b) {
  Key k;
  k.reserve(a.size() + b.size() + 1);
  k.push_back(static_cast<int>(a.size()));
  k.insert(k.end(), a.begin(), a.end());
  k.insert(k.end(), b.begin(), b.end());
  return k;
}

std::pair<Key, Key> decode_pair(const Key& k) {
  const auto n = static_cast<std::size_t>(k.at(0));
  return {Key(k.begin() + 1, k.begin() + 1 + static_cast<long>(n)), Key(k.begin() + 1 + static_cast<long>(n), k.end())};
}

Root add_roots(const Root& a, const Root& b) {
  Root r = a;
  for (std::size_t i = 0; i < r.finite.size(); ++i) r.finite[i] += b.finite[i];
  r.level += b.level;
  return r;
}

Root zero_root(int rank) { return {RootVec(static_cast<std::size_t>(rank), 0), 0}; }

}  // namespace ivm
