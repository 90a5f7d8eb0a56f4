#include "induced.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "linalg.hpp"
#include "parallel.hpp"

namespace ivm {

namespace {

bool is_diagonal(const Mode& m) {
  return m.kind == ModeKind::Central || m.kind == ModeKind::Derivation || (m.kind == ModeKind::Cartan && m.level == 0);
}

void check_compatible(const AffineAlgebra& a, const AffineAlgebra& b) {
  if (a.type().name() != b.type().name() || !(a.cartan_basis() == b.cartan_basis()))
    throw std::invalid_argument("inducing module lives over a different algebra or Cartan basis");
}

}  // namespace

int mode_height(const AffineAlgebra& alg, const Mode& m) {
  return m.kind == ModeKind::Real ? std::abs(finite_height(alg.root(m.index))) : 0;
}

InducedModule::InducedModule(std::shared_ptr<const ModeSplit> split, ModulePtr v, const Box& check)
    : WeightModule(split->algebra(), v->lambda()), split_(std::move(split)), v_(std::move(v)) {
  check_compatible(*alg_, v_->algebra());
  const auto vb = v_->basis(check);
  for (const auto& m : alg_->modes_in_box(std::max(check.depth, 1))) {
    if (is_diagonal(m)) continue;
    const Part p = split_->part_of(m);
    if (p == Part::Levi && !v_->acts(m))
      throw std::invalid_argument("inducing module does not carry the Levi mode " + alg_->mode_name(m));
    if (p == Part::Upper && v_->acts(m))
      for (const auto& k : vb)
        if (!v_->act(m, k).empty())
          throw std::invalid_argument("upper mode " + alg_->mode_name(m) + " acts nontrivially on the inducing module");
  }
}

Key InducedModule::make_key(const Word& w, const Key& v) {
  Key k;
  k.reserve(1 + 3 * w.size() + v.size());
  k.push_back(static_cast<int>(w.size()));
  for (const auto& m : w) {
    k.push_back(static_cast<int>(m.kind));
    k.push_back(m.level);
    k.push_back(m.index);
  }
  k.insert(k.end(), v.begin(), v.end());
  return k;
}

std::pair<Word, Key> InducedModule::split_key(const Key& k) {
  const auto n = static_cast<std::size_t>(k.at(0));
  Word w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    w.push_back({static_cast<ModeKind>(k[1 + 3 * i]), k[2 + 3 * i], k[3 + 3 * i]});
  return {std::move(w), Key(k.begin() + static_cast<long>(1 + 3 * n), k.end())};
}

Root InducedModule::shift(const Key& k) const {
  auto [w, v] = split_key(k);
  Root r = v_->shift(v);
  for (const auto& m : w) r = add_roots(r, alg_->weight(m));
  return r;
}

int InducedModule::degree(const Key& k) const {
  auto [w, v] = split_key(k);
  int d = v_->degree(v);
  for (const auto& m : w) d += std::abs(m.level);
  return d;
}

int InducedModule::fin_degree(const Key& k) const {
  auto [w, v] = split_key(k);
  int d = v_->fin_degree(v);
  for (const auto& m : w) d += mode_height(*alg_, m);
  return d;
}

bool InducedModule::acts(const Mode& m) const { return split_->part_of(m) != Part::Outside; }

Key InducedModule::generator() const { return make_key({}, v_->generator()); }

std::string InducedModule::describe(const Key& k) const {
  auto [w, v] = split_key(k);
  std::ostringstream os;
  for (const auto& m : w) os << alg_->mode_name(m) << " ";
  os << v_->describe(v);
  return os.str();
}

std::vector<Mode> InducedModule::lower_modes(const Box& box) const {
  std::vector<Mode> out;
  for (const auto& m : alg_->modes_in_box(box.depth)) {
    if (split_->part_of(m) != Part::Lower || mode_height(*alg_, m) > box.height) continue;
    if (m.level == 0 && mode_height(*alg_, m) == 0) throw std::logic_error("lower mode without grading cost");
    out.push_back(m);
  }
  return out;
}

std::vector<Key> InducedModule::basis(const Box& box) const {
  const auto lower = lower_modes(box);
  std::vector<std::tuple<Word, int, int>> words;
  Word cur;
  auto rec = [&](auto&& self, std::size_t from, int deg, int fin) -> void {
    words.emplace_back(cur, deg, fin);
    for (std::size_t j = from; j < lower.size(); ++j) {
      const int d = deg + std::abs(lower[j].level), f = fin + mode_height(*alg_, lower[j]);
      if (d > box.depth || f > box.height) continue;
      cur.push_back(lower[j]);
      self(self, j, d, f);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, 0);
  std::vector<Key> out;
  for (const auto& vk : v_->basis(box)) {
    const int vd = v_->degree(vk), vf = v_->fin_degree(vk);
    for (const auto& [w, d, f] : words)
      if (d + vd <= box.depth && f + vf <= box.height) out.push_back(make_key(w, vk));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mode> InducedModule::raising_modes(int mode_box) const {
  std::vector<Mode> out;
  const Key g = v_->generator();
  for (const auto& m : alg_->modes_in_box(mode_box)) {
    if (is_diagonal(m)) continue;
    const Part p = split_->part_of(m);
    if (p == Part::Upper || (p == Part::Levi && v_->act(m, g).empty())) out.push_back(m);
  }
  return out;
}

std::size_t InducedModule::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

Vec InducedModule::act_nondiagonal(const Mode& m, const Key& k) const {
  auto [w, v] = split_key(k);
  return apply(m, w, v);
}

Vec InducedModule::apply(const AlgElement& x, const Word& w, const Key& v) const {
  Vec out;
  for (const auto& [m, c] : x) out.axpy(c, apply(m, w, v));
  return out;
}

Vec InducedModule::apply(const Mode& x, const Vec& u) const {
  Vec out;
  for (const auto& [k, c] : u) {
    auto [w, v] = split_key(k);
    out.axpy(c, apply(x, w, v));
  }
  return out;
}

Vec InducedModule::apply(const Mode& x, const Word& w, const Key& v) const {
  const Key key = make_key(w, v);
  if (is_diagonal(x)) return WeightModule::act(x, key);
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find({x, key});
    if (it != cache_.end()) return it->second;
  }
  const Part part = split_->part_of(x);
  Vec out;
  if (part == Part::Outside) throw std::logic_error("mode " + alg_->mode_name(x) + " is outside the acting subalgebra");
  if (w.empty()) {
    if (part == Part::Levi) {
      for (const auto& [vk, c] : v_->act(x, v)) out.add(make_key({}, vk), c);
    } else if (part == Part::Lower) {
      out.add(make_key({x}, v), 1);
    }
  } else if (part == Part::Lower && !(w.front() < x)) {
    Word nw;
    nw.reserve(w.size() + 1);
    nw.push_back(x);
    nw.insert(nw.end(), w.begin(), w.end());
    out.add(make_key(nw, v), 1);
  } else {
    // x y1 rest = y1 (x rest) + [x, y1] rest
    const Word rest(w.begin() + 1, w.end());
    out = apply(w.front(), apply(x, rest, v));
    out += apply(alg_->bracket(x, w.front()), rest, v);
  }
  std::lock_guard lock(mu_);
  return cache_.try_emplace({x, key}, std::move(out)).first->second;
}

std::map<Root, int> character_oracle(const InducedModule& m, const Box& box) {
  const auto& alg = m.algebra();
  using State = std::tuple<int, int, int, Root>;  // total cost, depth, height, shift
  std::map<State, long> series{{State{0, 0, 0, zero_root(alg.rank())}, 1}};
  for (const auto& x : m.lower_modes(box)) {
    const int dx = std::abs(x.level), fx = mode_height(alg, x);
    const Root wx = alg.weight(x);
    // Multiply by 1 / (1 - X): ascending cost order lets each term feed the next.
    for (auto it = series.begin(); it != series.end(); ++it) {
      const auto& [cost, d, f, s] = it->first;
      if (d + dx > box.depth || f + fx > box.height) continue;
      series[State{cost + dx + fx, d + dx, f + fx, add_roots(s, wx)}] += it->second;
    }
  }
  std::map<Root, int> ch;
  const auto& v = m.inducing();
  for (const auto& vk : v.basis(box)) {
    const int vd = v.degree(vk), vf = v.fin_degree(vk);
    const Root vs = v.shift(vk);
    for (const auto& [st, n] : series) {
      const auto& [cost, d, f, s] = st;
      if (d + vd <= box.depth && f + vf <= box.height) ch[add_roots(s, vs)] += static_cast<int>(n);
    }
  }
  return ch;
}

int u_height(const WeightModule& m, const Vec& v, const std::vector<int>& omega) {
  const Root s = homogeneous_shift(m, v);
  int h = 0;
  for (std::size_t j = 0; j < s.finite.size(); ++j)
    if (std::find(omega.begin(), omega.end(), static_cast<int>(j)) == omega.end()) h -= s.finite[j];
  if (h < 0) throw std::invalid_argument("weight lies above the generator in the radical directions");
  return h;
}

int affine_height(const AffineAlgebra& alg, const Root& shift) {
  const RootVec& theta = alg.root(alg.highest_root_index());
  int h = -shift.level;
  for (std::size_t j = 0; j < shift.finite.size(); ++j) h -= shift.finite[j] + shift.level * theta[j];
  return h;
}

namespace {

std::map<Root, std::vector<Key>> weight_spaces(const InducedModule& m, const Box& box) {
  std::map<Root, std::vector<Key>> spaces;
  for (const auto& k : m.basis(box)) spaces[m.shift(k)].push_back(k);
  return spaces;
}

int distance(const Root& r) {
  int d = std::abs(r.level);
  for (int x : r.finite) d += std::abs(x);
  return d;
}

// Lexicographic (total distance, finite part): trading finite height for level
// at equal total still counts as progress.
std::pair<int, int> measure(const Root& r) {
  int f = 0;
  for (int x : r.finite) f += std::abs(x);
  return {distance(r), f};
}

}  // namespace

Certificate singular_vectors(const InducedModule& m, const Box& box, int extra_levels, int jobs) {
  Certificate cert;
  cert.kind = Certificate::Kind::SingularList;
  cert.box = box;
  const auto raising = m.raising_modes(box.depth + extra_levels);
  for (const auto& x : raising) cert.raising.push_back(m.algebra().mode_name(x));
  const auto spaces = weight_spaces(m, box);
  std::vector<std::pair<Root, std::vector<Key>>> list(spaces.begin(), spaces.end());
  cert.spaces.resize(list.size());
  parallel_for(list.size(), jobs, [&](std::size_t i) {
    const auto& [shift, keys] = list[i];
    const std::size_t n = keys.size();
    // One equation per (raising mode, target basis vector).
    std::map<std::pair<std::size_t, Key>, RowVec> eqs;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < raising.size(); ++r)
        for (const auto& [t, c] : m.act(raising[r], keys[j])) {
          auto& row = eqs.try_emplace({r, t}, n, Rational(0)).first->second;
          row[j] = c;
        }
    RowEchelon e(n);
    for (auto& [tag, row] : eqs) e.insert(std::move(row));
    WeightSpaceResult res;
    res.shift = shift;
    res.dimension = static_cast<int>(n);
    for (const auto& z : e.nullspace()) {
      Vec v;
      for (std::size_t j = 0; j < n; ++j) v.add(keys[j], z[j]);
      res.singular.push_back(std::move(v));
    }
    cert.spaces[i] = std::move(res);
  });
  for (const auto& s : cert.spaces) cert.singular_total += static_cast<int>(s.singular.size());
  return cert;
}

Certificate cyclicity_certificate(const InducedModule& m, const Box& box, int extra_levels, int jobs) {
  Certificate cert;
  cert.kind = Certificate::Kind::Cyclicity;
  cert.box = box;
  const auto& alg = m.algebra();
  // Upper and raising modes first: they are the natural way back to the top.
  std::vector<Mode> moves = m.raising_modes(box.depth + extra_levels);
  for (const auto& x : alg.modes_in_box(box.depth + extra_levels))
    if (!is_diagonal(x) && m.acts(x) && std::find(moves.begin(), moves.end(), x) == moves.end()) moves.push_back(x);
  for (const auto& x : moves) cert.raising.push_back(alg.mode_name(x));
  const Key gen = m.generator();
  const auto keys = m.basis(box);
  cert.reach.resize(keys.size());
  constexpr long kNodeBudget = 200000;

  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    std::vector<Mode> word;
    long nodes = 0;
    std::function<bool(const Vec&, const Root&)> dfs = [&](const Vec& u, const Root& s) -> bool {
      if (distance(s) == 0) return u.coeff(gen) != 0;
      if (++nodes > kNodeBudget) return false;
      for (const auto& x : moves) {
        const Root s2 = add_roots(s, alg.weight(x));
        if (measure(s2) >= measure(s)) continue;
        Vec u2 = m.act(x, u);
        if (u2.empty()) continue;
        word.push_back(x);
        if (dfs(u2, s2)) return true;
        word.pop_back();
        if (nodes > kNodeBudget) return false;
      }
      return false;
    };
    Certificate::Reach r{keys[i], std::nullopt};
    if (dfs(Vec(keys[i], 1), m.shift(keys[i]))) {
      Vec check(keys[i], 1);
      for (const auto& x : word) check = m.act(x, check);
      if (check.coeff(gen) == 0) throw std::logic_error("cyclicity word failed re-verification");
      r.word = word;
    }
    cert.reach[i] = std::move(r);
  });
  for (const auto& r : cert.reach) cert.unreached += r.word ? 0 : 1;
  return cert;
}

}  // namespace ivm
