#include "heisenberg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "linalg.hpp"

namespace ivm {

HeisenbergBasis::HeisenbergBasis(AlgebraPtr alg) : alg_(std::move(alg)), n_(alg_->rank()) {
  const auto n = static_cast<std::size_t>(n_);
  const Matrix& g = alg_->cartan_gram();
  auto ip = [&](const RowVec& x, const RowVec& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x[i] != 0 && y[j] != 0) s += x[i] * y[j] * g(i, j);
    return s;
  };
  for (std::size_t j = 0; j < n; ++j) {
    RowVec v(n, 0);
    v[j] = 1;
    for (std::size_t r = 0; r < u_.size(); ++r) {
      const Rational c = ip(v, u_[r]) / norm_[r];
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * u_[r][i];
    }
    norm_.push_back(ip(v, v));
    u_.push_back(std::move(v));
  }
}

AlgElement HeisenbergBasis::oscillator(int i, int level) const {
  if (level == 0) throw std::invalid_argument("oscillators have nonzero level");
  const auto& u = u_.at(static_cast<std::size_t>(i));
  const Rational scale = level > 0 ? Rational(1) / norm_[static_cast<std::size_t>(i)] : Rational(1);
  AlgElement x;
  for (std::size_t j = 0; j < u.size(); ++j) x.add(Mode::cartan(static_cast<int>(j), level), scale * u[j]);
  return x;
}

bool HeisenbergBasis::verify(int box) const {
  for (int k = -box; k <= box; ++k) {
    if (k == 0) continue;
    for (int m = -box; m <= box; ++m) {
      if (m == 0) continue;
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
          AlgElement expect;
          if (i == j && k == -m) expect.add(Mode::central(), k);
          if (!(alg_->bracket(oscillator(i, k), oscillator(j, m)) == expect)) return false;
        }
      }
    }
  }
  return true;
}

int TriangularSpec::sign(int k, int i) const {
  switch (kind) {
    case Kind::Standard: return 1;
    case Kind::Phi: return static_cast<std::size_t>(k) <= phi.size() ? sign_at(phi, k) : (tail < 0 ? -1 : 1);
    case Kind::PerOscillator: {
      auto it = psi.find({k, i});
      if (it == psi.end()) return tail < 0 ? -1 : 1;
      return it->second > 0 ? 1 : -1;
    }
  }
  return 1;
}

bool TriangularSpec::creates(int level, int i) const {
  const int s = sign(std::abs(level), i);
  return level < 0 ? s > 0 : s < 0;
}

namespace {

using Pair = std::pair<int, int>;

std::vector<Pair> unpack(const Key& k) {
  std::vector<Pair> v;
  for (std::size_t i = 0; i + 1 < k.size(); i += 2) v.emplace_back(k[i], k[i + 1]);
  return v;
}

Key pack(const std::vector<Pair>& v) {
  Key k;
  for (const auto& [a, b] : v) {
    k.push_back(a);
    k.push_back(b);
  }
  return k;
}

void check_orthogonal(const AffineAlgebra& alg, const std::vector<int>& dirs) {
  const Matrix& g = alg.cartan_gram();
  for (int i : dirs) {
    if (i < 0 || i >= alg.rank()) throw std::invalid_argument("Heisenberg direction out of range");
    for (int j = 0; j < alg.rank(); ++j)
      if (j != i && g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0)
        throw std::invalid_argument("Heisenberg directions must be orthogonal to every other Cartan basis vector");
  }
}

}  // namespace

FockModule::FockModule(AlgebraPtr alg, std::vector<int> dirs, TriangularSpec spec, Lambda lambda)
    : WeightModule(std::move(alg), std::move(lambda)), dirs_(std::move(dirs)), spec_(std::move(spec)) {
  std::sort(dirs_.begin(), dirs_.end());
  dirs_.erase(std::unique(dirs_.begin(), dirs_.end()), dirs_.end());
  check_orthogonal(*alg_, dirs_);
}

Root FockModule::shift(const Key& k) const {
  Root r = zero_root(alg_->rank());
  for (std::size_t i = 1; i < k.size(); i += 2) r.level += k[i];
  return r;
}

int FockModule::degree(const Key& k) const {
  int d = 0;
  for (std::size_t i = 1; i < k.size(); i += 2) d += std::abs(k[i]);
  return d;
}

bool FockModule::acts(const Mode& m) const {
  return m.kind == ModeKind::Cartan && m.level != 0 && std::binary_search(dirs_.begin(), dirs_.end(), m.index);
}

Vec FockModule::act_nondiagonal(const Mode& m, const Key& k) const {
  auto v = unpack(k);
  if (spec_.creates(m.level, m.index)) {
    const Pair p{m.index, m.level};
    v.insert(std::upper_bound(v.begin(), v.end(), p), p);
    return Vec(pack(v), 1);
  }
  const Pair partner{m.index, -m.level};
  const auto [lo, hi] = std::equal_range(v.begin(), v.end(), partner);
  const long mult = hi - lo;
  if (mult == 0) return {};
  const auto idx = static_cast<std::size_t>(m.index);
  const Rational coeff = Rational(m.level) * alg_->cartan_gram()(idx, idx) * charge() * Rational(mult);
  v.erase(lo);
  return Vec(pack(v), coeff);
}

std::vector<Key> FockModule::basis(const Box& box) const {
  std::vector<Pair> creators;
  for (int i : dirs_)
    for (int l = 1; l <= box.depth; ++l) creators.emplace_back(i, spec_.creates(-l, i) ? -l : l);
  std::sort(creators.begin(), creators.end());
  std::vector<Key> out;
  std::vector<Pair> cur;
  auto rec = [&](auto&& self, std::size_t from, int budget) -> void {
    out.push_back(pack(cur));
    for (std::size_t j = from; j < creators.size(); ++j) {
      const int cost = std::abs(creators[j].second);
      if (cost > budget) continue;
      cur.push_back(creators[j]);
      self(self, j, budget - cost);
      cur.pop_back();
    }
  };
  rec(rec, 0, box.depth);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FockModule::describe(const Key& k) const {
  if (k.empty()) return "|0>";
  std::ostringstream os;
  for (const auto& [i, l] : unpack(k)) os << "b" << i + 1 << "(" << l << ")";
  os << "|0>";
  return os.str();
}

ZeroActionModule::ZeroActionModule(AlgebraPtr alg, std::vector<int> dirs, Lambda lambda, std::vector<int> grades)
    : WeightModule(std::move(alg), std::move(lambda)), dirs_(std::move(dirs)), grades_(std::move(grades)) {
  if (!dirs_.empty() && charge() != 0)
    throw std::invalid_argument("oscillators acting by zero force charge 0");
  std::sort(dirs_.begin(), dirs_.end());
  std::sort(grades_.begin(), grades_.end());
  grades_.erase(std::unique(grades_.begin(), grades_.end()), grades_.end());
}

Root ZeroActionModule::shift(const Key& k) const {
  Root r = zero_root(alg_->rank());
  r.level = k.at(0);
  return r;
}

bool ZeroActionModule::acts(const Mode& m) const {
  return m.kind == ModeKind::Cartan && m.level != 0 && std::binary_search(dirs_.begin(), dirs_.end(), m.index);
}

std::vector<Key> ZeroActionModule::basis(const Box& box) const {
  std::vector<Key> out;
  for (int g : grades_)
    if (std::abs(g) <= box.depth) out.push_back({g});
  return out;
}

Key ZeroActionModule::generator() const {
  if (grades_.empty()) throw std::logic_error("the zero module has no generator");
  return {grades_.front()};
}

Lambda TensorModule::combined(const WeightModule& l, const WeightModule& r, Routing routing) {
  if (l.algebra_ptr() != r.algebra_ptr() && !(l.algebra().cartan_basis() == r.algebra().cartan_basis() &&
                                              l.algebra().type().name() == r.algebra().type().name()))
    throw std::invalid_argument("tensor factors live over different algebras");
  Lambda s = l.lambda() + r.lambda();
  if (routing == Routing::Levi) {
    if (l.charge() != r.charge()) throw std::invalid_argument("tensor factors must have the same central charge");
    s.c = l.charge();
  }
  return s;
}

TensorModule::TensorModule(ModulePtr left, ModulePtr right, Routing routing)
    : WeightModule(left->algebra_ptr(), combined(*left, *right, routing)),
      left_(std::move(left)), right_(std::move(right)), routing_(routing) {}

Root TensorModule::shift(const Key& k) const {
  auto [a, b] = decode_pair(k);
  return add_roots(left_->shift(a), right_->shift(b));
}

int TensorModule::degree(const Key& k) const {
  auto [a, b] = decode_pair(k);
  return left_->degree(a) + right_->degree(b);
}

int TensorModule::fin_degree(const Key& k) const {
  auto [a, b] = decode_pair(k);
  return left_->fin_degree(a) + right_->fin_degree(b);
}

bool TensorModule::acts(const Mode& m) const {
  if (routing_ == Routing::Diagonal) return left_->acts(m) && right_->acts(m);
  return left_->acts(m) || right_->acts(m);
}

Vec TensorModule::act_nondiagonal(const Mode& m, const Key& k) const {
  auto [a, b] = decode_pair(k);
  Vec out;
  const bool on_right = routing_ == Routing::Diagonal || right_->acts(m);
  const bool on_left = routing_ == Routing::Diagonal || !on_right;
  if (on_left)
    for (const auto& [ka, c] : left_->act(m, a)) out.add(encode_pair(ka, b), c);
  if (on_right)
    for (const auto& [kb, c] : right_->act(m, b)) out.add(encode_pair(a, kb), c);
  return out;
}

std::vector<Key> TensorModule::basis(const Box& box) const {
  std::vector<Key> out;
  const auto lb = left_->basis(box);
  const auto rb = right_->basis(box);
  for (const auto& a : lb)
    for (const auto& b : rb)
      if (left_->degree(a) + right_->degree(b) <= box.depth && left_->fin_degree(a) + right_->fin_degree(b) <= box.height)
        out.push_back(encode_pair(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

Key TensorModule::generator() const { return encode_pair(left_->generator(), right_->generator()); }

std::string TensorModule::describe(const Key& k) const {
  auto [a, b] = decode_pair(k);
  return left_->describe(a) + " (x) " + right_->describe(b);
}

bool verify_relations(const WeightModule& m, const Box& box, int mode_box) {
  const auto& alg = m.algebra();
  std::vector<Mode> modes;
  for (const auto& x : alg.modes_in_box(mode_box)) {
    const bool diagonal = x.kind == ModeKind::Central || x.kind == ModeKind::Derivation ||
                          (x.kind == ModeKind::Cartan && x.level == 0);
    if (diagonal || m.acts(x)) modes.push_back(x);
  }
  for (const auto& k : m.basis(box)) {
    const Vec v(k, 1);
    std::map<Mode, Vec> once;
    for (const auto& x : modes) once.emplace(x, m.act(x, k));
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (std::size_t j = i + 1; j < modes.size(); ++j) {
        const Vec lhs = m.act(modes[i], once[modes[j]]) - m.act(modes[j], once[modes[i]]);
        const Vec rhs = m.act(alg.bracket(modes[i], modes[j]), v);
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

std::string admissible_name(AdmissibleVerdict v) {
  switch (v) {
    case AdmissibleVerdict::AdmissibleInBox: return "admissible-in-box";
    case AdmissibleVerdict::NotAdmissible: return "not-admissible";
    case AdmissibleVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Weight spaces of a cyclic submodule, as reduced rows over a growing key index.
struct KeyIndex {
  std::map<Key, std::size_t> col;
  std::vector<Key> keys;
  std::size_t of(const Key& k) {
    auto [it, fresh] = col.try_emplace(k, keys.size());
    if (fresh) keys.push_back(k);
    return it->second;
  }
};

RowVec to_row(KeyIndex& idx, const Vec& v) {
  for (const auto& [k, c] : v) idx.of(k);
  RowVec r(idx.keys.size(), 0);
  for (const auto& [k, c] : v) r[idx.of(k)] = c;
  return r;
}

enum class PairResult { Ok, Fails, Undecided };

struct AdmissibleSearch {
  const WeightModule& s;
  std::vector<AlgElement> up, down;  // x_k^i and x_{-k}^i acting on s
  int k;
  Box box, search;

  // Cyclic submodule within the search box: level -> spanning weight vectors.
  std::map<int, std::vector<Vec>> cyclic(const Key& w) const {
    KeyIndex idx;
    for (const auto& key : s.basis(search)) idx.of(key);
    std::map<int, std::vector<Vec>> spaces;
    std::map<int, RowEchelon> ech;
    std::vector<Vec> queue;
    auto add = [&](const Vec& v) {
      if (v.empty()) return;
      for (const auto& [key, c] : v)
        if (!idx.col.count(key)) return;
      const int lvl = s.shift(v.begin()->first).level;
      auto& e = ech.try_emplace(lvl, idx.keys.size()).first->second;
      if (!e.insert(to_row(idx, v))) return;
      spaces[lvl].push_back(v);
      queue.push_back(v);
    };
    add(Vec(w, 1));
    while (!queue.empty()) {
      const Vec v = queue.back();
      queue.pop_back();
      for (const auto& x : up) add(s.act(x, v));
      for (const auto& x : down) add(s.act(x, v));
    }
    return spaces;
  }

  // Monomials of degree j in the given commuting operators applied to v.
  std::vector<Vec> monomial_images(const std::vector<AlgElement>& ops, const Vec& v, int j) const {
    std::vector<Vec> out;
    auto rec = [&](auto&& self, std::size_t from, int left, const Vec& cur) -> void {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = from; i < ops.size(); ++i) self(self, i, left - 1, s.act(ops[i], cur));
    };
    rec(rec, 0, j, v);
    return out;
  }

  PairResult test_pair(const std::map<int, std::vector<Vec>>& mp, const Vec& v1, const Vec& v2, bool raising) const {
    const auto& ops = raising ? up : down;
    const int l1 = s.shift(v1.begin()->first).level;
    const int l2 = s.shift(v2.begin()->first).level;
    bool undecided = false;
    for (const auto& [e, vs] : mp) {
      // raising operators add k per step: need e <= l_i; lowering: e >= l_i.
      const int d1 = raising ? l1 - e : e - l1;
      const int d2 = raising ? l2 - e : e - l2;
      if (d1 < 0 || d2 < 0 || d1 % k || d2 % k) continue;
      const int j1 = d1 / k, j2 = d2 / k;
      if (ops.size() == 1) {
        // Unknowns: coefficients of v over vs, then s, t.
        KeyIndex idx;
        std::vector<Vec> img1, img2;
        for (const auto& v : vs) {
          Vec a = v, b = v;
          for (int i = 0; i < j1; ++i) a = s.act(ops[0], a);
          for (int i = 0; i < j2; ++i) b = s.act(ops[0], b);
          img1.push_back(a);
          img2.push_back(b);
        }
        for (const auto* list : {&img1, &img2})
          for (const auto& v : *list)
            for (const auto& [key, c] : v) idx.of(key);
        for (const auto& [key, c] : v1) idx.of(key);
        for (const auto& [key, c] : v2) idx.of(key);
        const std::size_t nk = idx.keys.size(), nv = vs.size();
        Matrix m(2 * nk, nv + 2);
        for (std::size_t c = 0; c < nv; ++c) {
          for (const auto& [key, x] : img1[c]) m(idx.of(key), c) = x;
          for (const auto& [key, x] : img2[c]) m(nk + idx.of(key), c) = x;
        }
        for (const auto& [key, x] : v1) m(idx.of(key), nv) = -x;
        for (const auto& [key, x] : v2) m(nk + idx.of(key), nv + 1) = -x;
        bool s_free = false, t_free = false;
        for (const auto& z : nullspace(m)) {
          if (z[nv] != 0) s_free = true;
          if (z[nv + 1] != 0) t_free = true;
        }
        if (s_free && t_free) return PairResult::Ok;
      } else {
        for (const auto& v : vs) {
          bool ok = true;
          for (const auto& [target, j] : {std::pair<const Vec*, int>{&v1, j1}, {&v2, j2}}) {
            KeyIndex idx;
            auto imgs = monomial_images(ops, v, j);
            for (const auto& im : imgs)
              for (const auto& [key, c] : im) idx.of(key);
            for (const auto& [key, c] : *target) idx.of(key);
            RowEchelon e(idx.keys.size());
            for (const auto& im : imgs) e.insert(to_row(idx, im));
            if (!e.contains(to_row(idx, *target))) ok = false;
          }
          if (ok) return PairResult::Ok;
        }
        undecided = true;
      }
    }
    return undecided ? PairResult::Undecided : PairResult::Fails;
  }
};

}  // namespace

AdmissibilityReport check_admissible(const WeightModule& s, int k, const Box& box) {
  if (k <= 0) throw std::invalid_argument("admissibility level must be positive");
  AdmissibilityReport rep;
  rep.level = k;
  HeisenbergBasis hb(s.algebra_ptr());
  AdmissibleSearch search{s, {}, {}, k, box, {2 * box.depth + k, box.height}};
  auto acting = [&](const AlgElement& x) {
    return std::all_of(x.begin(), x.end(), [&](const auto& t) { return s.acts(t.first); });
  };
  for (int i = 0; i < hb.multiplicity(k); ++i) {
    const auto xu = hb.oscillator(i, k), xd = hb.oscillator(i, -k);
    if (acting(xu) && acting(xd)) {
      search.up.push_back(xu);
      search.down.push_back(xd);
    }
  }
  if (search.up.empty()) return rep;

  std::set<std::string> directions;
  bool undecided = false;
  for (const auto& w : s.basis(box)) {
    ++rep.cyclic_submodules;
    const auto mp = search.cyclic(w);
    std::vector<Vec> cands;
    for (const auto& [lvl, vs] : mp)
      for (const auto& v : vs) {
        bool in_box = true;
        for (const auto& [key, c] : v)
          if (s.degree(key) > box.depth || s.fin_degree(key) > box.height) in_box = false;
        if (in_box) cands.push_back(v);
      }
    bool raising_ok = true, lowering_ok = true, raising_undecided = false, lowering_undecided = false;
    std::optional<std::pair<Vec, Vec>> both_fail, any_fail;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = a + 1; b < cands.size(); ++b) {
        const auto up = search.test_pair(mp, cands[a], cands[b], true);
        const auto dn = search.test_pair(mp, cands[a], cands[b], false);
        if (up != PairResult::Ok) raising_ok = false;
        if (dn != PairResult::Ok) lowering_ok = false;
        raising_undecided |= up == PairResult::Undecided;
        lowering_undecided |= dn == PairResult::Undecided;
        if (up == PairResult::Fails && dn == PairResult::Fails && !both_fail) both_fail = {cands[a], cands[b]};
        if ((up != PairResult::Ok || dn != PairResult::Ok) && !any_fail) any_fail = {cands[a], cands[b]};
      }
    }
    if (raising_ok) directions.insert("raising");
    else if (lowering_ok) directions.insert("lowering");
    else if (raising_undecided || lowering_undecided) {
      undecided = true;
      if (!rep.witness) rep.witness = any_fail;
    } else {
      rep.verdict = AdmissibleVerdict::NotAdmissible;
      rep.witness = both_fail ? both_fail : any_fail;
      return rep;
    }
  }
  if (undecided) {
    rep.verdict = AdmissibleVerdict::Inconclusive;
    return rep;
  }
  rep.direction = directions.size() == 1 ? *directions.begin() : (directions.empty() ? "" : "mixed");
  return rep;
}

TwoSumsReport heis_two_sums(const WeightModule& s, const std::function<AlgElement(int)>& osc,
                            const std::vector<Vec>& w, const std::vector<int>& offsets, int n) {
  if (w.empty() || w.size() != offsets.size()) throw std::invalid_argument("need one offset per vector");
  if (offsets.front() != 0) throw std::invalid_argument("first offset must be 0");
  for (std::size_t i = 1; i < offsets.size(); ++i)
    if (offsets[i] <= offsets[i - 1]) throw std::invalid_argument("offsets must increase strictly");
  if (n <= offsets.back()) throw std::invalid_argument("N must exceed every offset");
  const Root mu1 = homogeneous_shift(s, w.front());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Root mu = homogeneous_shift(s, w[i]);
    if (mu.finite != mu1.finite || mu1.level - mu.level != offsets[i])
      throw std::invalid_argument("weights of the vectors do not match their offsets");
  }
  TwoSumsReport rep;
  rep.n = n;
  for (std::size_t i = 0; i < w.size(); ++i) {
    rep.sum_plus += s.act(osc(n - offsets[i]), w[i]);
    rep.sum_minus += s.act(osc(-n - offsets[i]), w[i]);
  }
  rep.verdict = !rep.sum_plus.empty() || !rep.sum_minus.empty();
  return rep;
}

}  // namespace ivm
