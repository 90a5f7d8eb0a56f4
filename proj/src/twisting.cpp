#include "twisting.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <set>
#include <stdexcept>

#include "linalg.hpp"
#include "parallel.hpp"

namespace ivm {

namespace {

Root scale(const Root& r, int s) {
  Root out = r;
  for (auto& x : out.finite) x *= s;
  out.level *= s;
  return out;
}

Root negate(const Root& r) { return scale(r, -1); }

// Boxed basis grouped by weight.
class SpaceIndex {
 public:
  SpaceIndex(const WeightModule& m, const Box& b) {
    for (const auto& k : m.basis(b)) spaces_[m.shift(k)].push_back(k);
  }
  const std::vector<Key>& at(const Root& r) const {
    static const std::vector<Key> none;
    auto it = spaces_.find(r);
    return it == spaces_.end() ? none : it->second;
  }

 private:
  std::map<Root, std::vector<Key>> spaces_;
};

Vec power(const WeightModule& m, const Mode& f, Vec v, int n) {
  for (int i = 0; i < n; ++i) v = m.act(f, v);
  return v;
}

// Rank of a family of vectors.
std::size_t rank_of(const std::vector<Vec>& rows) {
  std::map<Key, std::size_t> col;
  for (const auto& r : rows)
    for (const auto& [k, c] : r) col.try_emplace(k, col.size());
  RowEchelon e(col.size());
  for (const auto& r : rows) {
    RowVec row(col.size());
    for (const auto& [k, c] : r) row[col[k]] = c;
    e.insert(std::move(row));
  }
  return e.rank();
}

struct LocalDim {
  int dim = 0;
  bool injective = true;
};

// dim M_{mu - N alpha} - rank(f^N on M_mu); this is dim (M_f / M)_mu once N is large.
LocalDim localized_dim(const WeightModule& m, const SpaceIndex& idx, const Mode& f, const Root& alpha,
                       const Root& mu, int n) {
  std::vector<Vec> images;
  for (const auto& k : idx.at(mu)) images.push_back(power(m, f, Vec(k, 1), n));
  const auto r = rank_of(images);
  LocalDim out;
  out.injective = r == images.size();
  out.dim = static_cast<int>(idx.at(add_roots(mu, scale(alpha, -n))).size()) - static_cast<int>(r);
  return out;
}

}  // namespace

Rational multichoose(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * Rational(n + i - 1) / Rational(i);
  return r;
}

std::vector<AlgElement> ad_series(const AffineAlgebra& alg, const Mode& f, const AlgElement& x) {
  std::vector<AlgElement> out;
  const AlgElement fe(f, 1);
  for (AlgElement cur = x; !cur.empty(); cur = alg.bracket(fe, cur)) {
    if (out.size() > 4) throw std::logic_error("ad(f) is not nilpotent on " + alg.mode_name(x.begin()->first));
    out.push_back(cur);
  }
  return out;
}

// ---------------------------------------------------------------- LocalizedModule

LocalizedModule::LocalizedModule(ModulePtr m, Mode f, int n_bound)
    : WeightModule(m->algebra_ptr(), m->lambda()), m_(std::move(m)), f_(f), n_bound_(n_bound) {
  if (f_.kind != ModeKind::Real) throw std::invalid_argument("localization needs a real root vector");
  if (!m_->acts(f_)) throw std::invalid_argument("localized mode does not act on the module");
  alpha_ = negate(alg_->weight(f_));
}

Root LocalizedModule::shift(const Key& k) const {
  auto [n, mk] = split_key(k);
  return add_roots(m_->shift(mk), scale(alpha_, n));
}

int LocalizedModule::degree(const Key& k) const {
  auto [n, mk] = split_key(k);
  return m_->degree(mk) + n * std::abs(alpha_.level);
}

int LocalizedModule::fin_degree(const Key& k) const {
  auto [n, mk] = split_key(k);
  return m_->fin_degree(mk) + n * std::abs(finite_height(alpha_.finite));
}

bool LocalizedModule::acts(const Mode& x) const { return m_->acts(x); }

std::vector<Key> LocalizedModule::basis(const Box& box) const {
  std::vector<Key> out;
  const auto inner = m_->basis(box);
  for (int n = 1; n <= n_bound_; ++n)
    for (const auto& k : inner) out.push_back(make_key(n, k));
  return out;
}

Key LocalizedModule::generator() const { return make_key(1, m_->generator()); }

std::string LocalizedModule::describe(const Key& k) const {
  auto [n, mk] = split_key(k);
  return alg_->mode_name(f_) + "^-" + std::to_string(n) + " " + m_->describe(mk);
}

// x f^{-n} = sum_k binom(n+k-1, k) f^{-n-k} ad(f)^k(x)
Vec LocalizedModule::act_nondiagonal(const Mode& x, const Key& k) const {
  auto [n, mk] = split_key(k);
  const auto series = ad_series(*alg_, f_, AlgElement(x, 1));
  Vec out;
  for (std::size_t j = 0; j < series.size(); ++j) {
    const int e = n + static_cast<int>(j);
    const Rational c = multichoose(n, static_cast<int>(j));
    for (const auto& [mk2, c2] : m_->act(series[j], Vec(mk, 1))) out.add(make_key(e, mk2), c * c2);
  }
  return out;
}

bool LocalizedModule::is_zero(const Vec& v) const {
  std::map<Root, std::vector<std::pair<Key, Rational>>> by_weight;
  for (const auto& [k, c] : v) by_weight[shift(k)].emplace_back(k, c);
  for (const auto& [mu, terms] : by_weight) {
    int top = 0;
    for (const auto& [k, c] : terms) top = std::max(top, k.at(0));
    // f^{-top} y with y in M_{mu - top alpha}; zero iff y in f^top M_mu.
    Vec y;
    for (const auto& [k, c] : terms) {
      auto [n, mk] = split_key(k);
      y.axpy(c, power(*m_, f_, Vec(mk, 1), top - n));
    }
    if (y.empty()) continue;
    for (const auto& [mk, c] : y)
      if (m_->degree(mk) != std::abs(m_->shift(mk).level))
        throw std::invalid_argument("quotient test needs a module graded by level");
    // Basis vectors of weight mu: degree is |level|; enlarge the height cut until the count settles.
    const int depth = std::abs(mu.level);
    int height = 2 * depth + std::abs(finite_height(mu.finite));
    std::vector<Key> space;
    for (std::size_t last = static_cast<std::size_t>(-1);; height += 2) {
      space.clear();
      for (const auto& k : m_->basis({depth, height}))
        if (m_->shift(k) == mu) space.push_back(k);
      if (space.size() == last) break;
      last = space.size();
    }
    std::vector<Vec> rows;
    for (const auto& k : space) rows.push_back(power(*m_, f_, Vec(k, 1), top));
    const auto r = rank_of(rows);
    rows.push_back(y);
    if (rank_of(rows) != r) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Twisting

Twisting::Twisting(std::shared_ptr<const InducedModule> iv, TwistRoot alpha, int n_bound) : iv_(std::move(iv)) {
  const auto& alg = iv_->algebra();
  if (alpha.root < 0 || alpha.root >= alg.root_count()) throw std::invalid_argument("twisting root out of range");
  if (alpha.level < 0 || (alpha.level == 0 && !alg.is_positive(alpha.root)))
    throw std::invalid_argument("twisting root must be positive");
  const Mode e = Mode::real(alpha.root, alpha.level);
  f_ = Mode::real(alg.negative_of(alpha.root), -alpha.level);
  const auto& split = iv_->split();
  if (split.part_of(e) != Part::Levi || split.part_of(f_) != Part::Levi)
    throw std::invalid_argument("twisting root is not a root of the Levi factor");
  source_ = std::make_shared<LocalizedModule>(iv_, f_, n_bound);
  tv_ = std::make_shared<LocalizedModule>(iv_->inducing_ptr(), f_, n_bound);
  target_ = std::make_shared<InducedModule>(iv_->split_ptr(), tv_, Box{1, 1});
}

Key Twisting::target_key(int n, const Key& iv_key) const {
  auto [w, vk] = InducedModule::split_key(iv_key);
  return InducedModule::make_key(w, LocalizedModule::make_key(n, vk));
}

Vec Twisting::ad_f(const Vec& w) const {
  Vec out = iv_->act(f_, w);
  const auto& v = iv_->inducing();
  for (const auto& [k, c] : w) {
    auto [word, vk] = InducedModule::split_key(k);
    for (const auto& [vk2, c2] : v.act(f_, vk)) out.add(InducedModule::make_key(word, vk2), -c * c2);
  }
  return out;
}

std::vector<Vec> Twisting::ad_powers(const Key& iv_key) const {
  const auto factors = static_cast<std::size_t>(iv_key.at(0));
  std::vector<Vec> out;
  for (Vec cur(iv_key, 1); !cur.empty(); cur = ad_f(cur)) {
    if (out.size() > 2 * factors + 1) throw std::logic_error("ad(f) series did not terminate");
    out.push_back(cur);
  }
  return out;
}

Vec Twisting::forward(const Vec& s) const {
  Vec out;
  for (const auto& [key, c] : s) {
    auto [n, ivk] = LocalizedModule::split_key(key);
    const auto pw = ad_powers(ivk);
    for (std::size_t k = 0; k < pw.size(); ++k) {
      const int kk = static_cast<int>(k);
      const Rational coef = (kk % 2 ? -c : c) * multichoose(n, kk);
      for (const auto& [k2, c2] : pw[k]) out.add(target_key(n + kk, k2), coef * c2);
    }
  }
  return out;
}

Vec Twisting::backward(const Vec& t) const {
  Vec out;
  for (const auto& [key, c] : t) {
    auto [word, lk] = InducedModule::split_key(key);
    auto [n, vk] = LocalizedModule::split_key(lk);
    const auto pw = ad_powers(InducedModule::make_key(word, vk));
    for (std::size_t k = 0; k < pw.size(); ++k) {
      const int kk = static_cast<int>(k);
      const Rational coef = c * multichoose(n, kk);
      for (const auto& [k2, c2] : pw[k]) out.add(source_key(n + kk, k2), coef * c2);
    }
  }
  return out;
}

bool Twisting::target_is_zero(const Vec& t) const {
  std::map<Word, Vec> by_word;
  for (const auto& [key, c] : t) {
    auto [word, lk] = InducedModule::split_key(key);
    by_word[word].add(lk, c);
  }
  for (const auto& [w, v] : by_word)
    if (!tv_->is_zero(v)) return false;
  return true;
}

IntertwineReport verify_intertwining(const Twisting& t, const Box& sample_box, int n_bound, int mode_bound,
                                     int jobs) {
  const auto& iv = t.induced();
  const auto base = iv.basis(sample_box);
  std::vector<std::pair<int, Key>> samples;
  for (int n = 1; n <= n_bound; ++n)
    for (const auto& b : base) samples.emplace_back(n, b);
  const auto modes = iv.algebra().modes_in_box(mode_bound);

  struct Result {
    bool roundtrip = true;
    long eq_checks = 0, rel_checks = 0;
    std::vector<IntertwineWitness> failures;
  };
  std::vector<Result> results(samples.size());
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    const auto& [n, b] = samples[i];
    auto& r = results[i];
    const Key sk = t.source_key(n, b);
    const Vec s(sk, 1);
    const Vec img = t.forward(s);
    const Vec tk(t.target_key(n, b), 1);
    const Vec d1 = t.backward(img) - s;
    const Vec d2 = t.forward(t.backward(tk)) - tk;
    if (!d1.empty() || !d2.empty()) {
      r.roundtrip = false;
      r.failures.push_back({"roundtrip", "", sk, d1.empty() ? d2 : d1});
    }
    for (const auto& g : modes) {
      ++r.eq_checks;
      const Vec d = t.target().act(g, img) - t.forward(t.source().act(g, s));
      if (!t.target_is_zero(d)) r.failures.push_back({"equivariance", iv.algebra().mode_name(g), sk, d});
    }
    // f^{-n} (x) f b - f^{-n+1} (x) b
    ++r.rel_checks;
    Vec rel;
    for (const auto& [k, c] : iv.act(t.f(), b)) rel.add(t.source_key(n, k), c);
    if (n > 1) rel.add(t.source_key(n - 1, b), -1);
    const Vec d = t.forward(rel);
    if (!t.target_is_zero(d)) r.failures.push_back({"relation", iv.algebra().mode_name(t.f()), sk, d});
  });

  IntertwineReport rep;
  rep.samples = static_cast<long>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& r = results[i];
    rep.roundtrip.emplace_back(t.source_key(samples[i].first, samples[i].second), r.roundtrip);
    rep.roundtrip_checks += 2;
    rep.equivariance_checks += r.eq_checks;
    rep.relation_checks += r.rel_checks;
    if (!r.roundtrip) rep.roundtrip_ok = false;
    for (const auto& w : r.failures) {
      if (w.check == "equivariance") rep.equivariance_ok = false;
      if (w.check == "relation") rep.relations_ok = false;
      if (rep.witnesses.size() < 8) rep.witnesses.push_back(w);
    }
  }
  return rep;
}

TwistCharacterReport twisted_wakimoto_character(const WakimotoModule& w, TwistRoot alpha_spec, const Box& box,
                                                int n_bound) {
  const auto& alg = w.algebra();
  if (alpha_spec.level != 0) throw std::invalid_argument("character comparison needs a level-zero twisting root");
  const Mode f = Mode::real(alg.negative_of(alpha_spec.root), 0);
  const Root alpha = negate(alg.weight(f));
  const auto& v = w.inducing();
  const int depth = box.depth;
  const int big_n = n_bound + 2 * depth + 2;
  const int height = box.height + n_bound + big_n + 2 * depth + 5;
  const SpaceIndex wi(w, {depth, height}), wi2(w, {depth, height + 2});
  const SpaceIndex vi(v, {depth, height}), vi2(v, {depth, height + 2});

  TwistCharacterReport rep;
  auto local = [&](const WeightModule& m, const SpaceIndex& a, const SpaceIndex& b, const Root& mu) {
    const auto x = localized_dim(m, a, f, alpha, mu, big_n);
    const auto y = localized_dim(m, a, f, alpha, mu, big_n + 1);
    const auto z = localized_dim(m, b, f, alpha, mu, big_n);
    if (!x.injective) rep.injective = false;
    if (x.dim != y.dim || x.dim != z.dim) rep.stable = false;
    return x.dim;
  };

  // Oscillator monomials: carrier keys over the generator of V.
  std::vector<std::pair<Root, int>> monomials;
  const Key vgen = v.generator();
  const Root vgen_shift = v.shift(vgen);
  for (const auto& k : w.basis({depth, height})) {
    const auto nvars = static_cast<std::size_t>(k.at(0));
    if (Key(k.begin() + static_cast<long>(1 + 2 * nvars), k.end()) != vgen) continue;
    monomials.emplace_back(add_roots(w.shift(k), negate(vgen_shift)), w.degree(k) - v.degree(vgen));
  }

  std::set<Root> weights;
  for (const auto& k : w.basis(box))
    for (int n = 1; n <= n_bound; ++n) weights.insert(add_roots(w.shift(k), scale(alpha, n)));
  for (const auto& mu : weights) {
    const int lhs = local(w, wi, wi2, mu);
    int rhs = 0;
    for (const auto& [sigma, deg] : monomials) {
      const Root nu = add_roots(mu, negate(sigma));
      if (std::abs(nu.level) > depth - deg) continue;
      rhs += local(v, vi, vi2, nu);
    }
    rep.dims[mu] = {lhs, rhs};
    if (lhs != rhs) rep.equal = false;
  }
  return rep;
}

}  // namespace ivm
