#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"
#include "sparse.hpp"

namespace ivm {

enum class CartanFamily { A, D, E };

struct CartanType {
  CartanFamily family = CartanFamily::A;
  int rank = 1;

  /// Parses "A1", "D4", "E8", ... Rejects non-simply-laced families and
  /// ranks outside the classification.
  static CartanType parse(const std::string& name);
  std::string name() const;
};

/// Integer coordinates over the simple roots alpha_1..alpha_n.
using RootVec = std::vector<int>;

/// finite + level * delta.
struct Root {
  RootVec finite;
  int level = 0;
  auto operator<=>(const Root&) const = default;
};

enum class RootClass { Real, Imaginary, NotARoot };

enum class ModeKind : std::uint8_t { Real = 0, Cartan = 1, Central = 2, Derivation = 3 };

/// A basis element of the affine algebra: e_alpha (x) t^n, b_i (x) t^n, c or d.
/// `index` is the position of alpha in the sorted finite root list (Real) or
/// the Cartan basis index (Cartan).
struct Mode {
  ModeKind kind = ModeKind::Central;
  int level = 0;
  int index = 0;

  static Mode real(int root, int n) { return {ModeKind::Real, n, root}; }
  static Mode cartan(int i, int n) { return {ModeKind::Cartan, n, i}; }
  static Mode central() { return {ModeKind::Central, 0, 0}; }
  static Mode derivation() { return {ModeKind::Derivation, 0, 0}; }

  auto operator<=>(const Mode&) const = default;
};

using AlgElement = SparseVec<Mode>;

/// Untwisted simply-laced affine algebra g (x) C[t,t^-1] + Cc + Cd.
///
/// Root vectors e_alpha are normalized so that [e_a, e_-a] = h_a (the coroot)
/// and (e_a, e_-a) = 1. Structure constants come from a bimultiplicative
/// asymmetry function eps on the root lattice. The Cartan subalgebra uses a
/// configurable basis b_1..b_n (rows of `cartan_basis`, in simple-coroot
/// coordinates); the default is the simple coroots themselves.
class AffineAlgebra {
 public:
  explicit AffineAlgebra(CartanType type, std::optional<Matrix> cartan_basis = std::nullopt);

  /// Same algebra with a different Cartan basis.
  AffineAlgebra with_cartan_basis(const Matrix& basis) const { return AffineAlgebra(type_, basis); }

  const CartanType& type() const { return type_; }
  int rank() const { return type_.rank; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<RootVec>& roots() const { return roots_; }
  int root_count() const { return static_cast<int>(roots_.size()); }
  const RootVec& root(int idx) const { return roots_[static_cast<std::size_t>(idx)]; }
  std::optional<int> root_index(const RootVec& r) const;
  int negative_of(int idx) const { return neg_[static_cast<std::size_t>(idx)]; }
  bool is_positive(int idx) const { return positive_[static_cast<std::size_t>(idx)]; }
  int simple_root_index(int i) const;
  int highest_root_index() const { return highest_; }

  /// (alpha, beta) for lattice vectors in simple-root coordinates.
  int pairing(const RootVec& a, const RootVec& b) const;
  /// Bimultiplicative asymmetry function, +-1.
  int eps(const RootVec& a, const RootVec& b) const;
  /// [e_a, e_b] = structure_constant(a, b) e_{a+b} when a+b is a root, 0 otherwise.
  int structure_constant(int a, int b) const;

  const Matrix& cartan_basis() const { return basis_; }
  /// (b_i, b_j).
  const Matrix& cartan_gram() const { return gram_; }
  /// alpha(b_i).
  const Rational& root_on_basis(int root, int i) const { return root_on_basis_[static_cast<std::size_t>(root)][static_cast<std::size_t>(i)]; }
  /// Coordinates of the coroot h_alpha in the b basis.
  const RowVec& coroot_in_basis(int root) const { return coroot_[static_cast<std::size_t>(root)]; }
  /// Coordinates over b of an element of h given over simple coroots.
  RowVec to_basis(const RowVec& simple_coroot_coords) const;

  AlgElement bracket(const Mode& x, const Mode& y) const;
  AlgElement bracket(const AlgElement& x, const AlgElement& y) const;
  Rational form(const Mode& x, const Mode& y) const;
  Rational form(const AlgElement& x, const AlgElement& y) const;

  RootClass classify(const Root& r) const;
  /// All valid roots with |level| <= max_level, ordered by (level, finite lex).
  std::vector<Root> roots_in_box(int max_level) const;
  /// All modes with |level| <= max_level plus c and d.
  std::vector<Mode> modes_in_box(int max_level) const;

  /// Root-lattice weight of a mode (c and d have weight zero).
  Root weight(const Mode& m) const;
  std::string mode_name(const Mode& m) const;

 private:
  CartanType type_;
  std::vector<std::vector<int>> cartan_;
  std::vector<RootVec> roots_;
  std::map<RootVec, int> index_;
  std::vector<int> neg_;
  std::vector<bool> positive_;
  std::vector<std::vector<int>> sc_;  // structure constants, 0 where a+b is not a root
  std::vector<std::vector<int>> sum_; // index of a+b or -1
  int highest_ = -1;

  Matrix basis_, basis_inv_, gram_;
  std::vector<RowVec> root_on_basis_;
  std::vector<RowVec> coroot_;
};

using AlgebraPtr = std::shared_ptr<const AffineAlgebra>;

/// Convenience for the common case.
AlgebraPtr build_affine(const CartanType& t);

std::string root_to_string(const Root& r);
int finite_height(const RootVec& r);

}  // namespace ivm
