#include "algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ivm {

CartanType CartanType::parse(const std::string& name) {
  if (name.size() < 2) throw std::invalid_argument("bad Cartan type '" + name + "'");
  const char f = name[0];
  int r = 0;
  try {
    std::size_t used = 0;
    r = std::stoi(name.substr(1), &used);
    if (used != name.size() - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad Cartan type '" + name + "'");
  }
  CartanType t;
  t.rank = r;
  switch (f) {
    case 'A':
      t.family = CartanFamily::A;
      if (r < 1) throw std::invalid_argument("type A needs rank >= 1");
      break;
    case 'D':
      t.family = CartanFamily::D;
      if (r < 4) throw std::invalid_argument("type D needs rank >= 4");
      break;
    case 'E':
      t.family = CartanFamily::E;
      if (r < 6 || r > 8) throw std::invalid_argument("type E needs rank 6, 7 or 8");
      break;
    case 'B': case 'C': case 'F': case 'G':
      throw std::invalid_argument("unsupported type '" + name + "': only simply-laced types A, D, E are supported");
    default:
      throw std::invalid_argument("bad Cartan type '" + name + "'");
  }
  return t;
}

std::string CartanType::name() const {
  const char f = family == CartanFamily::A ? 'A' : family == CartanFamily::D ? 'D' : 'E';
  return std::string(1, f) + std::to_string(rank);
}

namespace {

std::vector<std::vector<int>> make_cartan(const CartanType& t) {
  const int n = t.rank;
  std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  auto link = [&](int i, int j) { a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1; };
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  switch (t.family) {
    case CartanFamily::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case CartanFamily::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case CartanFamily::E:
      // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
  }
  return a;
}

RootVec add(const RootVec& a, const RootVec& b) {
  RootVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RootVec negate(const RootVec& a) {
  RootVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

}  // namespace

int finite_height(const RootVec& r) {
  int h = 0;
  for (int x : r) h += x;
  return h;
}

AffineAlgebra::AffineAlgebra(CartanType type, std::optional<Matrix> cartan_basis)
    : type_(type), cartan_(make_cartan(type)) {
  const int n = type_.rank;
  const auto un = static_cast<std::size_t>(n);

  // positive roots by simple-root strings: beta + alpha_i is a root iff (beta, alpha_i) = -1
  std::set<RootVec> pos;
  std::vector<RootVec> frontier;
  for (int i = 0; i < n; ++i) {
    RootVec s(un, 0);
    s[static_cast<std::size_t>(i)] = 1;
    pos.insert(s);
    frontier.push_back(s);
  }
  while (!frontier.empty()) {
    std::vector<RootVec> next;
    for (const auto& b : frontier)
      for (int i = 0; i < n; ++i) {
        RootVec s(un, 0);
        s[static_cast<std::size_t>(i)] = 1;
        if (pairing(b, s) == -1) {
          RootVec c = add(b, s);
          if (pos.insert(c).second) next.push_back(c);
        }
      }
    frontier = std::move(next);
  }
  std::set<RootVec> all(pos);
  for (const auto& p : pos) all.insert(negate(p));
  roots_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < roots_.size(); ++i) index_[roots_[i]] = static_cast<int>(i);

  const std::size_t nr = roots_.size();
  neg_.resize(nr);
  positive_.resize(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    neg_[i] = index_.at(negate(roots_[i]));
    positive_[i] = finite_height(roots_[i]) > 0;
    if (positive_[i] && (highest_ < 0 || finite_height(roots_[i]) > finite_height(roots_[static_cast<std::size_t>(highest_)])))
      highest_ = static_cast<int>(i);
  }

  // e_alpha = s_alpha E_alpha with s = +1 on positive roots and -1 on negative
  // roots, where [E_a, E_b] = eps(a,b) E_{a+b}, [E_a, E_-a] = -h_a.
  sc_.assign(nr, std::vector<int>(nr, 0));
  sum_.assign(nr, std::vector<int>(nr, -1));
  for (std::size_t a = 0; a < nr; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      auto it = index_.find(add(roots_[a], roots_[b]));
      if (it == index_.end()) continue;
      const auto c = static_cast<std::size_t>(it->second);
      const int s = (positive_[a] ? 1 : -1) * (positive_[b] ? 1 : -1) * (positive_[c] ? 1 : -1);
      sc_[a][b] = s * eps(roots_[a], roots_[b]);
      sum_[a][b] = it->second;
    }

  basis_ = cartan_basis ? *cartan_basis : Matrix::identity(un);
  if (basis_.rows() != un || basis_.cols() != un) throw std::invalid_argument("Cartan basis has wrong shape");
  auto inv = inverse(basis_);
  if (!inv) throw std::invalid_argument("Cartan basis is singular");
  basis_inv_ = *inv;
  Matrix a(un, un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) a(i, j) = cartan_[i][j];
  gram_ = basis_ * a * basis_.transpose();

  root_on_basis_.assign(nr, RowVec(un));
  coroot_.resize(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t i = 0; i < un; ++i) {
      Rational v = 0;
      for (std::size_t k = 0; k < un; ++k) {
        int p = 0;
        for (std::size_t j = 0; j < un; ++j) p += roots_[r][j] * cartan_[j][k];
        v += basis_(i, k) * p;
      }
      root_on_basis_[r][i] = v;
    }
    RowVec c(un);
    for (std::size_t k = 0; k < un; ++k) c[k] = roots_[r][k];
    coroot_[r] = to_basis(c);
  }
}

RowVec AffineAlgebra::to_basis(const RowVec& c) const {
  const std::size_t n = c.size();
  RowVec x(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (c[k] != 0) x[j] += c[k] * basis_inv_(k, j);
  return x;
}

std::optional<int> AffineAlgebra::root_index(const RootVec& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int AffineAlgebra::simple_root_index(int i) const {
  RootVec s(static_cast<std::size_t>(rank()), 0);
  s[static_cast<std::size_t>(i)] = 1;
  return index_.at(s);
}

int AffineAlgebra::pairing(const RootVec& a, const RootVec& b) const {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * cartan_[i][j] * b[j];
  return s;
}

int AffineAlgebra::eps(const RootVec& a, const RootVec& b) const {
  // eps(alpha_i, alpha_j) = -1 for i == j, and for i < j joined in the diagram
  long e = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (i == j || (i < j && cartan_[i][j] == -1)) e += static_cast<long>(a[i]) * b[j];
  return (e % 2 == 0) ? 1 : -1;
}

int AffineAlgebra::structure_constant(int a, int b) const {
  return sc_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

AlgElement AffineAlgebra::bracket(const Mode& x, const Mode& y) const {
  AlgElement out;
  using K = ModeKind;
  if (x.kind == K::Central || y.kind == K::Central) return out;
  if (x.kind == K::Derivation) {
    if (y.kind != K::Derivation) out.add(y, y.level);
    return out;
  }
  if (y.kind == K::Derivation) {
    out.add(x, -x.level);
    return out;
  }
  const int lvl = x.level + y.level;
  if (x.kind == K::Real && y.kind == K::Real) {
    const auto a = static_cast<std::size_t>(x.index), b = static_cast<std::size_t>(y.index);
    if (neg_[a] == y.index) {
      const RowVec& h = coroot_[a];
      for (std::size_t i = 0; i < h.size(); ++i) out.add(Mode::cartan(static_cast<int>(i), lvl), h[i]);
      if (lvl == 0) out.add(Mode::central(), x.level);
    } else if (sum_[a][b] >= 0) {
      out.add(Mode::real(sum_[a][b], lvl), sc_[a][b]);
    }
    return out;
  }
  if (x.kind == K::Cartan && y.kind == K::Real) {
    out.add(Mode::real(y.index, lvl), root_on_basis(y.index, x.index));
    return out;
  }
  if (x.kind == K::Real && y.kind == K::Cartan) {
    out.add(Mode::real(x.index, lvl), -root_on_basis(x.index, y.index));
    return out;
  }
  // Cartan, Cartan
  if (lvl == 0 && x.level != 0)
    out.add(Mode::central(), x.level * gram_(static_cast<std::size_t>(x.index), static_cast<std::size_t>(y.index)));
  return out;
}

AlgElement AffineAlgebra::bracket(const AlgElement& x, const AlgElement& y) const {
  AlgElement out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) out.axpy(cx * cy, bracket(mx, my));
  return out;
}

Rational AffineAlgebra::form(const Mode& x, const Mode& y) const {
  using K = ModeKind;
  if ((x.kind == K::Central && y.kind == K::Derivation) || (x.kind == K::Derivation && y.kind == K::Central)) return 1;
  if (x.level + y.level != 0) return 0;
  if (x.kind == K::Real && y.kind == K::Real) return neg_[static_cast<std::size_t>(x.index)] == y.index ? 1 : 0;
  if (x.kind == K::Cartan && y.kind == K::Cartan) return gram_(static_cast<std::size_t>(x.index), static_cast<std::size_t>(y.index));
  return 0;
}

Rational AffineAlgebra::form(const AlgElement& x, const AlgElement& y) const {
  Rational s = 0;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) s += cx * cy * form(mx, my);
  return s;
}

RootClass AffineAlgebra::classify(const Root& r) const {
  if (static_cast<int>(r.finite.size()) != rank()) return RootClass::NotARoot;
  if (index_.count(r.finite)) return RootClass::Real;
  const bool zero = std::all_of(r.finite.begin(), r.finite.end(), [](int v) { return v == 0; });
  if (zero && r.level != 0) return RootClass::Imaginary;
  return RootClass::NotARoot;
}

std::vector<Root> AffineAlgebra::roots_in_box(int max_level) const {
  std::vector<Root> out;
  const RootVec zero(static_cast<std::size_t>(rank()), 0);
  for (int k = -max_level; k <= max_level; ++k) {
    std::vector<Root> level;
    for (const auto& r : roots_) level.push_back({r, k});
    if (k != 0) level.push_back({zero, k});
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Mode> AffineAlgebra::modes_in_box(int max_level) const {
  std::vector<Mode> out;
  for (int k = -max_level; k <= max_level; ++k) {
    for (int r = 0; r < root_count(); ++r) out.push_back(Mode::real(r, k));
    for (int i = 0; i < rank(); ++i) out.push_back(Mode::cartan(i, k));
  }
  out.push_back(Mode::central());
  out.push_back(Mode::derivation());
  std::sort(out.begin(), out.end());
  return out;
}

Root AffineAlgebra::weight(const Mode& m) const {
  Root r{RootVec(static_cast<std::size_t>(rank()), 0), 0};
  if (m.kind == ModeKind::Real) r.finite = root(m.index);
  if (m.kind == ModeKind::Real || m.kind == ModeKind::Cartan) r.level = m.level;
  return r;
}

std::string root_to_string(const Root& r) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < r.finite.size(); ++i) os << (i ? "," : "") << r.finite[i];
  os << ";" << r.level << ")";
  return os.str();
}

std::string AffineAlgebra::mode_name(const Mode& m) const {
  switch (m.kind) {
    case ModeKind::Central: return "c";
    case ModeKind::Derivation: return "d";
    case ModeKind::Cartan: return "h" + std::to_string(m.index + 1) + "[" + std::to_string(m.level) + "]";
    case ModeKind::Real: {
      std::ostringstream os;
      os << (is_positive(m.index) ? "e" : "f") << "(";
      const auto& r = root(m.index);
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << std::abs(r[i]);
      os << ")[" << m.level << "]";
      return os.str();
    }
  }
  return "?";
}

AlgebraPtr build_affine(const CartanType& t) { return std::make_shared<const AffineAlgebra>(t); }

}  // namespace ivm
