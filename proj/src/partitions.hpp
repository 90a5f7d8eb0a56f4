#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace ivm {

/// phi(n) for n = 1..K, each +1 or -1. Levels beyond the table read as +1.
using SignTable = std::vector<int>;

int sign_at(const SignTable& phi, int n);

enum class PartitionTag { Standard, Natural, Phi, Extensional };
std::string tag_name(PartitionTag t);

/// A subset P of the affine roots, stored extensionally for |level| <= box.
/// Tagged partitions also know their rule, which extends them past the box.
struct QuasePartition {
  PartitionTag tag = PartitionTag::Extensional;
  SignTable phi;
  int box = 0;
  std::set<Root> roots;

  bool contains(const Root& r) const;
};

/// Membership by rule; only meaningful for tagged partitions.
bool rule_contains(PartitionTag tag, const SignTable& phi, const Root& r);

QuasePartition standard_partition(const AffineAlgebra& alg, int box);
QuasePartition natural_partition(const AffineAlgebra& alg, int box);
QuasePartition phi_partition(const AffineAlgebra& alg, const SignTable& phi, int box);
QuasePartition extensional_partition(std::set<Root> roots, int box);

enum class Verdict { Valid, Invalid, Inconclusive };
std::string verdict_name(Verdict v);

struct ValidationReport {
  Verdict verdict = Verdict::Valid;
  /// "disjoint", "cover" or "closure"; empty when valid.
  std::string violated;
  std::vector<Root> witnesses;
  bool real_sum_closed = true;
  /// Level box the closure was computed in.
  int closure_box = 0;
};

/// Checks P and -P are disjoint and cover the boxed roots, and that the
/// subalgebra generated by h and the root spaces of P meets no root space
/// outside P. Real root spaces are tracked as present/absent, imaginary ones
/// as subspaces of h (x) t^n. Tagged partitions are closed in a box of twice
/// the size; extensional ones are inconclusive when a bracket leaves the box.
ValidationReport validate_quase_partition(const AffineAlgebra& alg, const QuasePartition& p);

/// Which part of G(l)^perp lies in the Levi factor.
enum class ImaginarySpec { Full, LeviOnly };

/// Outside: the mode is not in the subalgebra being decomposed.
enum class Part { Lower, Levi, Upper, Outside };

/// Triangular splitting of (a subalgebra of) the affine algebra into a lower
/// part, a Levi part and an upper part. Lower and Levi + Upper must each be
/// subalgebras, with Upper an ideal of Levi + Upper.
class ModeSplit {
 public:
  virtual ~ModeSplit() = default;
  virtual const AlgebraPtr& algebra() const = 0;
  virtual Part part_of(const Mode& m) const = 0;
  std::vector<Mode> modes_of(Part part, int box) const;
};

/// Natural parabolic subalgebra p = l + u with opposite radical u-bar.
///
/// The algebra is rebuilt over an orthogonal Cartan basis whose first |omega|
/// vectors span the coroots of omega (so G(l) is spanned by those directions
/// at each nonzero level and G(l)^perp by the rest). With ImaginarySpec::Full
/// all of G lies in l; with LeviOnly the perp directions at level n belong to
/// u when sign(n) == phi(|n|) and to u-bar otherwise.
class Parabolic : public ModeSplit {
 public:
  Parabolic(const AffineAlgebra& base, std::vector<int> omega, ImaginarySpec spec, SignTable phi = {});

  const AlgebraPtr& algebra() const override { return alg_; }
  /// 0-based simple root indices.
  const std::vector<int>& omega() const { return omega_; }
  ImaginarySpec imaginary_spec() const { return spec_; }
  const SignTable& phi() const { return phi_; }
  int levi_directions() const { return static_cast<int>(omega_.size()); }
  bool in_omega_span(const RootVec& r) const;
  bool is_perp_direction(int cartan_index) const { return cartan_index >= levi_directions(); }

  Part part_of(const Mode& m) const override;
  Part part_of(const Root& r) const;

  /// Root sets within a level box. Imaginary roots are listed in every part
  /// that holds a nonzero piece of their root space.
  std::vector<Root> roots_of(Part part, int box) const;

 private:
  AlgebraPtr alg_;
  std::vector<int> omega_;
  ImaginarySpec spec_;
  SignTable phi_;
  std::vector<bool> in_omega_;
};

/// Standard triangular splitting of the Levi factor l^0 of a parabolic:
/// the real root spaces of omega roots and the G(l) directions, split by
/// affine positivity; h, c and d form the middle part. Everything else is
/// Outside.
class LeviBorel : public ModeSplit {
 public:
  explicit LeviBorel(std::shared_ptr<const Parabolic> p) : p_(std::move(p)) {}
  const AlgebraPtr& algebra() const override { return p_->algebra(); }
  Part part_of(const Mode& m) const override;
  const Parabolic& parabolic() const { return *p_; }

 private:
  std::shared_ptr<const Parabolic> p_;
};

/// Orthogonal basis of h (rows in simple-coroot coordinates) whose first
/// |omega| rows span the coroots of omega.
Matrix adapted_cartan_basis(const AffineAlgebra& alg, const std::vector<int>& omega);

struct LeviLevel {
  int level = 0;
  std::vector<AlgElement> levi_part;  // G(l) at this level
  std::vector<AlgElement> perp_part;  // G(l)^perp at this level
};

struct LeviOrthogonalReport {
  std::vector<LeviLevel> levels;
  bool sum_is_whole = true;       // G(l) + G(l)^perp = G at each level
  bool perp_commutes_with_levi = true;
  bool intersection_is_central = true;
};

LeviOrthogonalReport levi_orthogonal(const Parabolic& p, int box);

/// ht_omega of gamma = -sum_{j in omega} k_j alpha_j, k_j >= 0. Throws
/// std::invalid_argument when gamma is not of that form. omega is 0-based.
int omega_height(const std::vector<int>& omega, const RootVec& gamma);

}  // namespace ivm
