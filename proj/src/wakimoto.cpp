#include "wakimoto.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "linalg.hpp"

namespace ivm {

// ---------------------------------------------------------------- WeylPoly

WeylPoly WeylPoly::constant(const Rational& c) {
  WeylPoly p;
  p.add({}, c);
  return p;
}

WeylPoly WeylPoly::osc(const OscMode& m) {
  Monomial mono;
  (m.kind == OscMode::Kind::A ? mono.ann : mono.star)[{m.root, m.n}] = 1;
  WeylPoly p;
  p.add(mono, 1);
  return p;
}

WeylPoly WeylPoly::current(const Mode& m) {
  Monomial mono;
  mono.currents.push_back(m);
  WeylPoly p;
  p.add(mono, 1);
  return p;
}

void WeylPoly::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylPoly operator+(const WeylPoly& a, const WeylPoly& b) {
  WeylPoly s = a;
  for (const auto& [m, c] : b.terms_) s.add(m, c);
  return s;
}

WeylPoly operator*(const Rational& s, const WeylPoly& a) {
  WeylPoly r;
  for (const auto& [m, c] : a.terms_) r.add(m, s * c);
  return r;
}

WeylPoly weyl_product(const WeylPoly& p, const WeylPoly& q) {
  using Powers = std::map<std::pair<int, int>, int>;
  WeylPoly out;
  for (const auto& [m1, c1] : p.terms()) {
    for (const auto& [m2, c2] : q.terms()) {
      // Move the A factors of m1 past the AStar factors of m2 (Leibniz rule):
      // A(r, m) acts as the derivative in the AStar(r, -m) variable.
      struct State {
        Powers star, ann;
        Rational c;
      };
      std::vector<State> states{{m2.star, {}, c1 * c2}};
      for (const auto& [key, a] : m1.ann) {
        const std::pair<int, int> var{key.first, -key.second};
        std::vector<State> next;
        for (const auto& st : states) {
          auto it = st.star.find(var);
          const int s = it == st.star.end() ? 0 : it->second;
          for (int k = 0; k <= std::min(a, s); ++k) {
            State ns = st;
            Rational falling = 1;
            for (int i = 0; i < k; ++i) falling *= s - i;
            ns.c *= binomial(a, k) * falling;
            if (s - k == 0) ns.star.erase(var);
            else ns.star[var] = s - k;
            if (a - k > 0) ns.ann[key] += a - k;
            next.push_back(std::move(ns));
          }
        }
        states = std::move(next);
      }
      for (auto& st : states) {
        WeylPoly::Monomial mono;
        mono.star = m1.star;
        for (const auto& [k, e] : st.star) mono.star[k] += e;
        mono.ann = st.ann;
        for (const auto& [k, e] : m2.ann) mono.ann[k] += e;
        mono.currents = m1.currents;
        mono.currents.insert(mono.currents.end(), m2.currents.begin(), m2.currents.end());
        out.add(mono, st.c);
      }
    }
  }
  return out;
}

std::string WeylPoly::to_string(const std::vector<std::string>& names, const AffineAlgebra& alg) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c.get_str() << ")";
    first = false;
    for (const auto& [k, e] : m.star)
      for (int i = 0; i < e; ++i) os << " AStar(" << names[static_cast<std::size_t>(k.first)] << "," << k.second << ")";
    for (const auto& [k, e] : m.ann)
      for (int i = 0; i < e; ++i) os << " A(" << names[static_cast<std::size_t>(k.first)] << "," << k.second << ")";
    for (const auto& x : m.currents) os << " " << alg.mode_name(x);
  }
  return os.str();
}

// ------------------------------------------------------------- Realization

namespace {

using Poly = SparseVec<std::vector<int>>;   // monomials in the gammas
using GElt = std::map<Mode, Poly>;          // g (x) C[gamma]

void gadd(GElt& x, const Mode& m, const Poly& p, const Rational& s = 1) {
  auto& slot = x[m];
  slot.axpy(s, p);
  if (slot.empty()) x.erase(m);
}

Poly times_gamma(const Poly& p, int g) {
  Poly out;
  for (const auto& [mono, c] : p) {
    auto m = mono;
    m.insert(std::upper_bound(m.begin(), m.end(), g), g);
    out.add(m, c);
  }
  return out;
}

std::vector<Rational> bernoulli_plus(int n) {
  std::vector<Rational> b(static_cast<std::size_t>(n + 1));
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * b[static_cast<std::size_t>(k)];
    b[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  if (n >= 1) b[1] = Rational(1, 2);
  return b;
}

}  // namespace

Realization::Realization(std::shared_ptr<const Parabolic> p) : p_(std::move(p)) {
  if (p_->imaginary_spec() != ImaginarySpec::Full)
    throw std::invalid_argument("the realization needs the whole Heisenberg subalgebra in the Levi factor");
  const auto& alg = *p_->algebra();
  for (int r = 0; r < alg.root_count(); ++r)
    if (alg.is_positive(r) && !p_->in_omega_span(alg.root(r))) nil_.push_back(r);
  const int bound = static_cast<int>(nil_.size()) + 2;

  auto ad_u = [&](const GElt& x) {
    GElt out;
    for (const auto& [b, poly] : x) {
      for (std::size_t g = 0; g < nil_.size(); ++g) {
        const Mode f = Mode::real(alg.negative_of(nil_[g]), 0);
        const Poly gp = times_gamma(poly, static_cast<int>(g));
        for (const auto& [c, coeff] : alg.bracket(f, b)) gadd(out, c, gp, coeff);
      }
    }
    return out;
  };
  // sum_k coeffs[k] (ad u)^k x, requiring the series to stop within the bound.
  auto series = [&](const GElt& x, const std::function<Rational(int)>& coeff) {
    GElt sum, term = x;
    for (int k = 0;; ++k) {
      if (term.empty()) break;
      if (k > bound) throw std::logic_error("ad u is not nilpotent within the expected bound");
      max_power_ = std::max(max_power_, k);
      for (const auto& [m, poly] : term) gadd(sum, m, poly, coeff(k));
      term = ad_u(term);
    }
    return sum;
  };
  const auto bplus = bernoulli_plus(bound + 1);
  std::vector<Rational> fact(static_cast<std::size_t>(bound + 3), 1);
  for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<long>(i);
  auto exp_minus = [&](int k) -> Rational { return (k % 2 ? Rational(-1) : Rational(1)) / fact[static_cast<std::size_t>(k)]; };
  auto f_series = [&](int k) -> Rational { return bplus[static_cast<std::size_t>(k)] / fact[static_cast<std::size_t>(k)]; };
  auto g_series = [&](int k) -> Rational { return Rational(1) / fact[static_cast<std::size_t>(k + 1)]; };

  // G(ad u) f_alpha, shared by every b.
  std::vector<GElt> g_of_f;
  for (int r : nil_) g_of_f.push_back(series(GElt{{Mode::real(alg.negative_of(r), 0), Poly({}, 1)}}, g_series));

  std::vector<Mode> gbasis;
  for (int r = 0; r < alg.root_count(); ++r) gbasis.push_back(Mode::real(r, 0));
  for (int i = 0; i < alg.rank(); ++i) gbasis.push_back(Mode::cartan(i, 0));

  for (const auto& b : gbasis) {
    std::vector<FieldTerm> terms;
    const GElt x = series(GElt{{b, Poly({}, 1)}}, exp_minus);
    GElt lower;
    for (const auto& [m, poly] : x) {
      if (m.kind == ModeKind::Real && !alg.is_positive(m.index) && !p_->in_omega_span(alg.root(m.index))) {
        lower[m] = poly;
      } else if (m.kind == ModeKind::Cartan || p_->in_omega_span(alg.root(m.index))) {
        for (const auto& [mono, c] : poly) terms.push_back({c, mono, FieldTerm::Last::Levi, 0, m});
      }
    }
    const GElt y = series(lower, f_series);
    for (const auto& [m, poly] : y) {
      const int g = nil_index(alg.negative_of(m.index));
      for (const auto& [mono, c] : poly) terms.push_back({-c, mono, FieldTerm::Last::A, g, {}});
    }
    for (std::size_t g = 0; g < nil_.size(); ++g) {
      Poly pairing;
      for (const auto& [m, poly] : g_of_f[g]) pairing.axpy(alg.form(m, b), poly);
      for (const auto& [mono, c] : pairing) terms.push_back({-c, mono, FieldTerm::Last::DGamma, static_cast<int>(g), {}});
    }
    fields_.emplace(b, std::move(terms));
  }
}

int Realization::nil_index(int positive_root) const {
  auto it = std::find(nil_.begin(), nil_.end(), positive_root);
  if (it == nil_.end()) throw std::invalid_argument("root is not in the nilradical");
  return static_cast<int>(it - nil_.begin());
}

const std::vector<FieldTerm>& Realization::field(const Mode& b) const {
  auto it = fields_.find(Mode{b.kind, 0, b.index});
  if (it == fields_.end()) throw std::invalid_argument("no field for this element");
  return it->second;
}

std::vector<std::string> Realization::root_names() const {
  std::vector<std::string> names;
  for (int r : nil_) names.push_back(root_to_string(Root{algebra().root(r), 0}));
  return names;
}

std::string Realization::field_to_string(const Mode& b) const {
  const auto names = root_names();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : field(b)) {
    os << (first ? "" : " + ") << "(" << t.coeff.get_str() << ")";
    first = false;
    if (t.last == FieldTerm::Last::A) os << " a" << names[static_cast<std::size_t>(t.root)] << "(z)";
    for (int g : t.gammas) os << " g" << names[static_cast<std::size_t>(g)] << "(z)";
    if (t.last == FieldTerm::Last::Levi) os << " " << algebra().mode_name(t.levi) << "(z)";
    if (t.last == FieldTerm::Last::DGamma) os << " a*dg" << names[static_cast<std::size_t>(t.root)] << "(z)";
  }
  if (first) os << "0";
  return os.str();
}

WeylPoly Realization::mode_polynomial(const Mode& b, int n, int window, const Rational& a) const {
  WeylPoly out;
  for (const auto& t : field(b)) {
    std::vector<int> modes(t.gammas.size(), -window);
    while (true) {
      int sum = 0;
      for (int m : modes) sum += m;
      const int j = n - sum;
      if (std::abs(j) <= window) {
        WeylPoly gam = WeylPoly::constant(t.coeff);
        for (std::size_t i = 0; i < modes.size(); ++i)
          gam = weyl_product(gam, WeylPoly::osc({OscMode::Kind::AStar, t.gammas[i], modes[i]}));
        switch (t.last) {
          case FieldTerm::Last::A:
            out = out + weyl_product(WeylPoly::osc({OscMode::Kind::A, t.root, j}), gam);
            break;
          case FieldTerm::Last::Levi:
            out = out + weyl_product(gam, WeylPoly::current(Mode{t.levi.kind, j, t.levi.index}));
            break;
          case FieldTerm::Last::DGamma:
            out = out + (Rational(-j) * a) * weyl_product(gam, WeylPoly::osc({OscMode::Kind::AStar, t.root, j}));
            break;
        }
      }
      std::size_t i = 0;
      while (i < modes.size() && modes[i] == window) modes[i++] = -window;
      if (i == modes.size()) break;
      ++modes[i];
    }
  }
  return out;
}

// ------------------------------------------------------------ WakimotoModule

namespace {

using Var = std::pair<int, int>;

std::vector<Var> vars_of(const Key& k) {
  const auto n = static_cast<std::size_t>(k.at(0));
  std::vector<Var> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(k[1 + 2 * i], k[2 + 2 * i]);
  return v;
}

Key v_key_of(const Key& k) { return Key(k.begin() + 1 + 2 * k.at(0), k.end()); }

Key make_key(const std::vector<Var>& vars, const Key& v) {
  Key k{static_cast<int>(vars.size())};
  for (const auto& [a, b] : vars) {
    k.push_back(a);
    k.push_back(b);
  }
  k.insert(k.end(), v.begin(), v.end());
  return k;
}

struct Partial {
  std::vector<Var> vars;
  int mode = 0;
  Rational coeff;
};

// Applies gamma_{g_1} ... gamma_{g_k}; gamma_{g,m} = -d/dy_{g,-m}.
std::vector<Partial> apply_gammas(const std::vector<Var>& vars, const std::vector<int>& gammas) {
  std::vector<Partial> cur{{vars, 0, 1}};
  for (int g : gammas) {
    std::vector<Partial> next;
    for (const auto& p : cur) {
      for (std::size_t i = 0; i < p.vars.size(); ++i) {
        if (p.vars[i].first != g || (i > 0 && p.vars[i] == p.vars[i - 1])) continue;
        const auto [lo, hi] = std::equal_range(p.vars.begin(), p.vars.end(), p.vars[i]);
        const long mult = hi - lo;
        Partial q{p.vars, p.mode - p.vars[i].second, p.coeff * Rational(-mult)};
        q.vars.erase(q.vars.begin() + (lo - p.vars.begin()));
        next.push_back(std::move(q));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

WakimotoModule::WakimotoModule(std::shared_ptr<const Realization> r, ModulePtr v)
    : WeightModule(r->parabolic().algebra(), v->lambda()), r_(std::move(r)), v_(std::move(v)) {
  if (!(v_->algebra().cartan_basis() == alg_->cartan_basis()))
    throw std::invalid_argument("inducing module lives over a different Cartan basis");
}

Root WakimotoModule::shift(const Key& k) const {
  Root s = v_->shift(v_key_of(k));
  for (const auto& [g, n] : vars_of(k)) {
    const auto& root = alg_->root(r_->nilradical()[static_cast<std::size_t>(g)]);
    for (std::size_t i = 0; i < root.size(); ++i) s.finite[i] -= root[i];
    s.level += n;
  }
  return s;
}

int WakimotoModule::degree(const Key& k) const {
  int d = v_->degree(v_key_of(k));
  for (const auto& [g, n] : vars_of(k)) d += std::abs(n);
  return d;
}

int WakimotoModule::fin_degree(const Key& k) const {
  int d = v_->fin_degree(v_key_of(k));
  for (const auto& [g, n] : vars_of(k)) d += finite_height(alg_->root(r_->nilradical()[static_cast<std::size_t>(g)]));
  return d;
}

bool WakimotoModule::acts(const Mode&) const { return true; }

Key WakimotoModule::generator() const { return make_key({}, v_->generator()); }

std::string WakimotoModule::describe(const Key& k) const {
  const auto names = r_->root_names();
  std::ostringstream os;
  for (const auto& [g, n] : vars_of(k)) os << "a" << names[static_cast<std::size_t>(g)] << "(" << n << ") ";
  os << v_->describe(v_key_of(k));
  return os.str();
}

std::vector<Key> WakimotoModule::basis(const Box& box) const {
  std::vector<Var> creators;
  for (std::size_t g = 0; g < r_->nilradical().size(); ++g) {
    if (finite_height(alg_->root(r_->nilradical()[g])) > box.height) continue;
    for (int n = -box.depth; n <= box.depth; ++n) creators.emplace_back(static_cast<int>(g), n);
  }
  std::sort(creators.begin(), creators.end());
  std::vector<std::tuple<std::vector<Var>, int, int>> monos;
  std::vector<Var> cur;
  auto rec = [&](auto&& self, std::size_t from, int deg, int fin) -> void {
    monos.emplace_back(cur, deg, fin);
    for (std::size_t j = from; j < creators.size(); ++j) {
      const int d = deg + std::abs(creators[j].second);
      const int f = fin + finite_height(alg_->root(r_->nilradical()[static_cast<std::size_t>(creators[j].first)]));
      if (d > box.depth || f > box.height) continue;
      cur.push_back(creators[j]);
      self(self, j, d, f);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, 0);
  std::vector<Key> out;
  for (const auto& vk : v_->basis(box)) {
    const int vd = v_->degree(vk), vf = v_->fin_degree(vk);
    for (const auto& [vars, d, f] : monos)
      if (d + vd <= box.depth && f + vf <= box.height) out.push_back(make_key(vars, vk));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vec WakimotoModule::act_nondiagonal(const Mode& m, const Key& k) const { return act_field(m, k); }

Vec WakimotoModule::act_field(const Mode& m, const Vec& v) const {
  Vec out;
  for (const auto& [k, c] : v) out.axpy(c, act_field(m, k));
  return out;
}

Vec WakimotoModule::act_field(const Mode& m, const Key& k) const {
  if (m.kind == ModeKind::Central || m.kind == ModeKind::Derivation) return WeightModule::act(m, k);
  const int n = m.level;
  const auto vars = vars_of(k);
  const Key vk = v_key_of(k);
  Vec out;
  for (const auto& t : r_->field(m)) {
    for (const auto& p : apply_gammas(vars, t.gammas)) {
      const int j = n - p.mode;
      const Rational c = t.coeff * p.coeff;
      switch (t.last) {
        case FieldTerm::Last::A: {
          auto nv = p.vars;
          const Var x{t.root, j};
          nv.insert(std::upper_bound(nv.begin(), nv.end(), x), x);
          out.add(make_key(nv, vk), c);
          break;
        }
        case FieldTerm::Last::Levi: {
          const Mode y{t.levi.kind, j, t.levi.index};
          for (const auto& [vk2, c2] : v_->act(y, vk)) out.add(make_key(p.vars, vk2), c * c2);
          break;
        }
        case FieldTerm::Last::DGamma: {
          const Var x{t.root, -j};
          const auto [lo, hi] = std::equal_range(p.vars.begin(), p.vars.end(), x);
          const long mult = hi - lo;
          if (mult == 0) break;
          auto nv = p.vars;
          nv.erase(nv.begin() + (lo - p.vars.begin()));
          out.add(make_key(nv, vk), c * Rational(j) * Rational(mult) * charge());
          break;
        }
      }
    }
  }
  return out;
}

HomomorphismReport verify_homomorphism(const WakimotoModule& w, int mode_bound, const Box& box, int jobs) {
  const auto& alg = w.algebra();
  std::vector<Mode> gens;
  for (int i = 0; i < alg.rank(); ++i) {
    const int r = alg.simple_root_index(i);
    gens.push_back(Mode::real(r, 0));
    gens.push_back(Mode::real(alg.negative_of(r), 0));
    gens.push_back(Mode::cartan(i, 0));
  }
  struct Task {
    Mode x, y;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j)
      for (int m = -mode_bound; m <= mode_bound; ++m)
        for (int n = -mode_bound; n <= mode_bound; ++n)
          tasks.push_back({{gens[i].kind, m, gens[i].index}, {gens[j].kind, n, gens[j].index}});
  const auto keys = w.basis(box);
  std::vector<std::vector<HomomorphismViolation>> found(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto& [x, y] = tasks[t];
      const AlgElement br = alg.bracket(x, y);
      for (const auto& k : keys) {
        Vec d = w.act_field(x, w.act_field(y, k)) - w.act_field(y, w.act_field(x, k));
        for (const auto& [z, c] : br) d.axpy(-c, w.act_field(z, k));
        if (!d.empty()) found[t].push_back({x, y, k, d});
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  HomomorphismReport rep;
  rep.checks = static_cast<long>(tasks.size() * keys.size());
  for (auto& f : found)
    for (auto& v : f) rep.violations.push_back(std::move(v));
  return rep;
}

MatchReport match_to_verma(const WakimotoModule& w, const InducedModule& m, const Box& box, int mode_bound) {
  MatchReport rep;
  std::map<Key, Vec> memo;
  auto phi_key = [&](const Key& k) -> Vec {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    auto [word, vk] = InducedModule::split_key(k);
    Vec v(concat_keys(Key{0}, vk), 1);
    for (auto i = word.rbegin(); i != word.rend(); ++i) v = w.act(*i, v);
    return memo.emplace(k, v).first->second;
  };
  auto phi = [&](const Vec& u) {
    Vec out;
    for (const auto& [k, c] : u) out.axpy(c, phi_key(k));
    return out;
  };
  const auto keys = m.basis(box);
  std::vector<Mode> modes;
  for (const auto& x : m.algebra().modes_in_box(mode_bound))
    if (m.acts(x)) modes.push_back(x);
  for (const auto& k : keys) {
    const Vec img = phi_key(k);
    for (const auto& x : modes) {
      if (!(phi(m.act(x, k)) == w.act(x, img))) {
        rep.equivariant = false;
        if (!rep.equivariance_failure) rep.equivariance_failure = {{x, k}};
      }
    }
  }
  std::map<Root, std::vector<Key>> spaces;
  for (const auto& k : keys) spaces[m.shift(k)].push_back(k);
  for (const auto& [s, ks] : spaces) {
    std::map<Key, std::size_t> col;
    std::vector<Vec> imgs;
    for (const auto& k : ks) {
      imgs.push_back(phi_key(k));
      for (const auto& [t, c] : imgs.back()) col.try_emplace(t, col.size());
    }
    RowEchelon e(col.size());
    for (const auto& v : imgs) {
      RowVec row(col.size(), 0);
      for (const auto& [t, c] : v) row[col[t]] = c;
      e.insert(row);
    }
    MatchBlock b{s, static_cast<int>(ks.size()), static_cast<int>(e.rank())};
    if (b.rank < b.dimension && !rep.rank_drop) rep.rank_drop = s;
    rep.blocks.push_back(b);
  }
  rep.isomorphism = rep.equivariant && !rep.rank_drop;
  return rep;
}

std::shared_ptr<WakimotoModule> imaginary_wakimoto_functor(std::shared_ptr<const Realization> r, ModulePtr v) {
  return std::make_shared<WakimotoModule>(std::move(r), std::move(v));
}

}  // namespace ivm
