#include "partitions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "linalg.hpp"

namespace ivm {

namespace {

bool is_zero_vec(const RootVec& r) {
  return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

bool is_positive_vec(const RootVec& r) {
  return !is_zero_vec(r) && std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
}

Root negate(const Root& r) {
  Root n = r;
  for (auto& x : n.finite) x = -x;
  n.level = -n.level;
  return n;
}

// Subalgebra generated by h and a set of root spaces, closed within a level box.
struct Closure {
  const AffineAlgebra& alg;
  int box;
  std::set<std::pair<int, int>> real;   // (root index, level)
  std::map<int, RowEchelon> imag;       // level -> subspace of h in b coordinates
  bool escaped = false;

  Closure(const AffineAlgebra& a, int b) : alg(a), box(b) {}

  bool add_real(int idx, int level) {
    if (std::abs(level) > box) { escaped = true; return false; }
    return real.insert({idx, level}).second;
  }

  bool add_imag(int level, const RowVec& h) {
    if (std::abs(level) > box) { escaped = true; return false; }
    auto it = imag.try_emplace(level, static_cast<std::size_t>(alg.rank())).first;
    return it->second.insert(h);
  }

  void run() {
    const auto n = static_cast<std::size_t>(alg.rank());
    bool changed = true;
    while (changed) {
      changed = false;
      const std::vector<std::pair<int, int>> snapshot(real.begin(), real.end());
      for (const auto& [a, m] : snapshot) {
        for (const auto& [b, k] : snapshot) {
          if (b == alg.negative_of(a)) {
            if (m + k != 0 && a < b) changed |= add_imag(m + k, alg.coroot_in_basis(a));
            continue;
          }
          if (alg.structure_constant(a, b) == 0) continue;
          RootVec s = alg.root(a);
          for (std::size_t i = 0; i < n; ++i) s[i] += alg.root(b)[i];
          changed |= add_real(*alg.root_index(s), m + k);
        }
      }
      for (const auto& [lvl, space] : std::vector<std::pair<int, RowEchelon>>(imag.begin(), imag.end())) {
        for (const auto& row : space.reduced_rows()) {
          for (int r = 0; r < alg.root_count(); ++r) {
            Rational v = 0;
            for (std::size_t i = 0; i < n; ++i) v += row[i] * alg.root_on_basis(r, static_cast<int>(i));
            if (v == 0) continue;
            for (const auto& [a, k] : snapshot)
              if (a == r) changed |= add_real(r, lvl + k);
          }
        }
      }
    }
  }
};

}  // namespace

int sign_at(const SignTable& phi, int n) {
  if (n < 1) throw std::invalid_argument("sign table is indexed from 1");
  if (static_cast<std::size_t>(n) > phi.size()) return 1;
  return phi[static_cast<std::size_t>(n - 1)] < 0 ? -1 : 1;
}

std::string tag_name(PartitionTag t) {
  switch (t) {
    case PartitionTag::Standard: return "standard";
    case PartitionTag::Natural: return "natural";
    case PartitionTag::Phi: return "phi";
    case PartitionTag::Extensional: return "extensional";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::Invalid: return "invalid";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool rule_contains(PartitionTag tag, const SignTable& phi, const Root& r) {
  const bool imaginary = is_zero_vec(r.finite);
  if (imaginary && r.level == 0) return false;
  switch (tag) {
    case PartitionTag::Standard:
      return r.level > 0 || (r.level == 0 && is_positive_vec(r.finite));
    case PartitionTag::Natural:
      return imaginary ? r.level > 0 : is_positive_vec(r.finite);
    case PartitionTag::Phi:
      if (!imaginary) return is_positive_vec(r.finite);
      return (r.level > 0 ? 1 : -1) == sign_at(phi, std::abs(r.level));
    case PartitionTag::Extensional:
      break;
  }
  throw std::logic_error("extensional partitions have no rule");
}

bool QuasePartition::contains(const Root& r) const {
  if (std::abs(r.level) <= box || tag == PartitionTag::Extensional) return roots.count(r) > 0;
  return rule_contains(tag, phi, r);
}

namespace {
QuasePartition materialize(const AffineAlgebra& alg, PartitionTag tag, SignTable phi, int box) {
  QuasePartition p{tag, std::move(phi), box, {}};
  for (const auto& r : alg.roots_in_box(box))
    if (rule_contains(tag, p.phi, r)) p.roots.insert(r);
  return p;
}
}  // namespace

QuasePartition standard_partition(const AffineAlgebra& alg, int box) {
  return materialize(alg, PartitionTag::Standard, {}, box);
}

QuasePartition natural_partition(const AffineAlgebra& alg, int box) {
  return materialize(alg, PartitionTag::Natural, {}, box);
}

QuasePartition phi_partition(const AffineAlgebra& alg, const SignTable& phi, int box) {
  if (static_cast<int>(phi.size()) < box) throw std::invalid_argument("sign table must cover levels 1..box");
  for (int s : phi)
    if (s != 1 && s != -1) throw std::invalid_argument("sign table entries must be +1 or -1");
  return materialize(alg, PartitionTag::Phi, phi, box);
}

QuasePartition extensional_partition(std::set<Root> roots, int box) {
  return {PartitionTag::Extensional, {}, box, std::move(roots)};
}

ValidationReport validate_quase_partition(const AffineAlgebra& alg, const QuasePartition& p) {
  ValidationReport rep;
  const auto all = alg.roots_in_box(p.box);
  for (const auto& r : p.roots) {
    if (p.roots.count(negate(r))) {
      rep.verdict = Verdict::Invalid;
      rep.violated = "disjoint";
      rep.witnesses.push_back(r);
    }
  }
  if (rep.verdict == Verdict::Invalid) return rep;
  for (const auto& r : all) {
    if (!p.roots.count(r) && !p.roots.count(negate(r))) {
      rep.verdict = Verdict::Invalid;
      rep.violated = "cover";
      rep.witnesses.push_back(r);
    }
  }
  if (rep.verdict == Verdict::Invalid) return rep;

  const bool tagged = p.tag != PartitionTag::Extensional;
  rep.closure_box = tagged ? 2 * p.box : p.box;
  auto member = [&](const Root& r) { return tagged ? rule_contains(p.tag, p.phi, r) : p.roots.count(r) > 0; };

  Closure cl(alg, rep.closure_box);
  const auto n = static_cast<std::size_t>(alg.rank());
  for (const auto& r : alg.roots_in_box(rep.closure_box)) {
    if (!member(r)) continue;
    if (is_zero_vec(r.finite)) {
      for (std::size_t i = 0; i < n; ++i) {
        RowVec e(n, 0);
        e[i] = 1;
        cl.add_imag(r.level, e);
      }
    } else {
      cl.add_real(*alg.root_index(r.finite), r.level);
    }
  }
  cl.run();

  std::vector<Root> imag_bad, real_bad;
  for (const auto& [lvl, space] : cl.imag) {
    Root r{RootVec(n, 0), lvl};
    if (space.rank() > 0 && !member(r)) imag_bad.push_back(r);
  }
  for (const auto& [idx, lvl] : cl.real) {
    Root r{alg.root(idx), lvl};
    if (!member(r)) real_bad.push_back(r);
  }
  // Nearest levels first, positive before negative.
  auto near = [](const Root& x, const Root& y) {
    if (std::abs(x.level) != std::abs(y.level)) return std::abs(x.level) < std::abs(y.level);
    if (x.level != y.level) return x.level > y.level;
    return x.finite < y.finite;
  };
  std::sort(imag_bad.begin(), imag_bad.end(), near);
  std::sort(real_bad.begin(), real_bad.end(), near);
  if (!imag_bad.empty() || !real_bad.empty()) {
    rep.verdict = Verdict::Invalid;
    rep.violated = "closure";
    rep.witnesses = imag_bad;
    rep.witnesses.insert(rep.witnesses.end(), real_bad.begin(), real_bad.end());
  } else if (cl.escaped && !tagged) {
    rep.verdict = Verdict::Inconclusive;
  }

  // Sum-closedness of the real part inside the partition box.
  for (const auto& a : p.roots) {
    if (is_zero_vec(a.finite)) continue;
    for (const auto& b : p.roots) {
      if (is_zero_vec(b.finite)) continue;
      Root s{a.finite, a.level + b.level};
      for (std::size_t i = 0; i < n; ++i) s.finite[i] += b.finite[i];
      if (std::abs(s.level) > p.box || is_zero_vec(s.finite) || !alg.root_index(s.finite)) continue;
      if (!p.roots.count(s)) rep.real_sum_closed = false;
    }
  }
  return rep;
}

Matrix adapted_cartan_basis(const AffineAlgebra& alg, const std::vector<int>& omega) {
  const auto n = static_cast<std::size_t>(alg.rank());
  const auto& a = alg.cartan_matrix();
  std::vector<std::size_t> order;
  for (int j : omega) order.push_back(static_cast<std::size_t>(j));
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(omega.begin(), omega.end(), static_cast<int>(j)) == omega.end()) order.push_back(j);
  auto ip = [&](const RowVec& x, const RowVec& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x[i] != 0 && y[j] != 0) s += x[i] * y[j] * a[i][j];
    return s;
  };
  std::vector<RowVec> rows;
  for (std::size_t j : order) {
    RowVec v(n, 0);
    v[j] = 1;
    for (const auto& u : rows) {
      const Rational c = ip(v, u) / ip(u, u);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
    }
    rows.push_back(v);
  }
  return Matrix::from_rows(rows, n);
}

Parabolic::Parabolic(const AffineAlgebra& base, std::vector<int> omega, ImaginarySpec spec, SignTable phi)
    : omega_(std::move(omega)), spec_(spec), phi_(std::move(phi)) {
  const int n = base.rank();
  std::sort(omega_.begin(), omega_.end());
  omega_.erase(std::unique(omega_.begin(), omega_.end()), omega_.end());
  in_omega_.assign(static_cast<std::size_t>(n), false);
  for (int j : omega_) {
    if (j < 0 || j >= n) throw std::invalid_argument("omega index out of range");
    in_omega_[static_cast<std::size_t>(j)] = true;
  }
  for (int s : phi_)
    if (s != 1 && s != -1) throw std::invalid_argument("sign table entries must be +1 or -1");
  alg_ = std::make_shared<const AffineAlgebra>(base.with_cartan_basis(adapted_cartan_basis(base, omega_)));
}

bool Parabolic::in_omega_span(const RootVec& r) const {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0 && !in_omega_[i]) return false;
  return true;
}

Part Parabolic::part_of(const Root& r) const {
  if (is_zero_vec(r.finite)) throw std::invalid_argument("imaginary root spaces may be split between parts");
  if (in_omega_span(r.finite)) return Part::Levi;
  return is_positive_vec(r.finite) ? Part::Upper : Part::Lower;
}

Part Parabolic::part_of(const Mode& m) const {
  switch (m.kind) {
    case ModeKind::Central:
    case ModeKind::Derivation:
      return Part::Levi;
    case ModeKind::Real:
      return part_of(Root{alg_->root(m.index), m.level});
    case ModeKind::Cartan:
      if (m.level == 0 || !is_perp_direction(m.index) || spec_ == ImaginarySpec::Full) return Part::Levi;
      return (m.level > 0 ? 1 : -1) == sign_at(phi_, std::abs(m.level)) ? Part::Upper : Part::Lower;
  }
  return Part::Levi;
}

std::vector<Mode> ModeSplit::modes_of(Part part, int box) const {
  std::vector<Mode> out;
  for (const auto& m : algebra()->modes_in_box(box))
    if (part_of(m) == part) out.push_back(m);
  return out;
}

Part LeviBorel::part_of(const Mode& m) const {
  const auto& alg = *p_->algebra();
  switch (m.kind) {
    case ModeKind::Central:
    case ModeKind::Derivation:
      return Part::Levi;
    case ModeKind::Cartan:
      if (m.level == 0) return Part::Levi;
      if (p_->is_perp_direction(m.index)) return Part::Outside;
      return m.level > 0 ? Part::Upper : Part::Lower;
    case ModeKind::Real:
      if (!p_->in_omega_span(alg.root(m.index))) return Part::Outside;
      if (m.level != 0) return m.level > 0 ? Part::Upper : Part::Lower;
      return alg.is_positive(m.index) ? Part::Upper : Part::Lower;
  }
  return Part::Outside;
}

std::vector<Root> Parabolic::roots_of(Part part, int box) const {
  std::vector<Root> out;
  for (const auto& r : alg_->roots_in_box(box)) {
    if (!is_zero_vec(r.finite)) {
      if (part_of(r) == part) out.push_back(r);
      continue;
    }
    for (int i = 0; i < alg_->rank(); ++i) {
      if (part_of(Mode::cartan(i, r.level)) == part) {
        out.push_back(r);
        break;
      }
    }
  }
  return out;
}

LeviOrthogonalReport levi_orthogonal(const Parabolic& p, int box) {
  LeviOrthogonalReport rep;
  const auto& alg = *p.algebra();
  const int n = alg.rank();
  const int nl = p.levi_directions();

  // Spanning modes of l^0: real root spaces of the omega roots, G(l), h, c.
  std::vector<Mode> levi0;
  for (const auto& m : alg.modes_in_box(box)) {
    if (m.kind == ModeKind::Real && p.in_omega_span(alg.root(m.index))) levi0.push_back(m);
    if (m.kind == ModeKind::Cartan && (m.level == 0 || m.index < nl)) levi0.push_back(m);
    if (m.kind == ModeKind::Central) levi0.push_back(m);
  }

  for (int k = -box; k <= box; ++k) {
    if (k == 0) continue;
    LeviLevel lv;
    lv.level = k;
    RowEchelon span(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      AlgElement x(Mode::cartan(i, k), 1);
      RowVec coords(static_cast<std::size_t>(n), 0);
      coords[static_cast<std::size_t>(i)] = 1;
      const bool fresh = span.insert(coords);
      if (!fresh) rep.intersection_is_central = false;
      (i < nl ? lv.levi_part : lv.perp_part).push_back(x);
    }
    if (static_cast<int>(span.rank()) != n) rep.sum_is_whole = false;
    for (const auto& x : lv.perp_part) {
      for (const auto& y : lv.levi_part)
        if (alg.form(x, AlgElement(Mode::cartan(y.begin()->first.index, -k), 1)) != 0) rep.intersection_is_central = false;
      for (const auto& m : levi0)
        if (!alg.bracket(x, AlgElement(m, 1)).empty()) rep.perp_commutes_with_levi = false;
    }
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

int omega_height(const std::vector<int>& omega, const RootVec& gamma) {
  int h = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const bool in = std::find(omega.begin(), omega.end(), static_cast<int>(i)) != omega.end();
    if (gamma[i] > 0 || (gamma[i] != 0 && !in)) throw std::invalid_argument("weight is not in the negative omega cone");
    h -= gamma[i];
  }
  return h;
}

}  // namespace ivm
