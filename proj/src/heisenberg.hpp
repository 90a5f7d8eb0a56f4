#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "module.hpp"
#include "partitions.hpp"

namespace ivm {

/// Oscillator basis of the Heisenberg subalgebra G = sum_{k != 0} h (x) t^k + Cc.
/// Built from a Gram-Schmidt orthogonalization u_1..u_n of the Cartan basis:
/// x_k^i = u_i t^k / (u_i, u_i) for k > 0 and x_{-k}^i = u_i t^{-k}, so that
/// [x_k^i, x_n^j] = k delta_ij delta_{k,-n} c.
class HeisenbergBasis {
 public:
  explicit HeisenbergBasis(AlgebraPtr alg);

  int multiplicity(int level) const { return level == 0 ? 0 : n_; }
  AlgElement oscillator(int i, int level) const;
  /// Checks the defining relations for all oscillators with |level| <= box.
  bool verify(int box) const;

 private:
  AlgebraPtr alg_;
  int n_;
  std::vector<RowVec> u_;
  std::vector<Rational> norm_;
};

/// Which oscillators annihilate the generator. sign(k, i) = +1 puts x_k^i
/// (k > 0) into G_+ and x_{-k}^i into G_-; -1 swaps them.
struct TriangularSpec {
  enum class Kind { Standard, Phi, PerOscillator };
  Kind kind = Kind::Standard;
  SignTable phi;
  std::map<std::pair<int, int>, int> psi;  // (k, i) -> +-1
  /// Sign of levels past the phi table and of unlisted psi entries.
  int tail = 1;

  static TriangularSpec standard() { return {}; }
  /// Every x_k with k > 0 creates: the lowest-weight Fock module.
  static TriangularSpec opposite() { return {Kind::Phi, {}, {}, -1}; }
  static TriangularSpec by_level(SignTable phi) { return {Kind::Phi, std::move(phi), {}}; }
  static TriangularSpec per_oscillator(std::map<std::pair<int, int>, int> psi) { return {Kind::PerOscillator, {}, std::move(psi)}; }

  int sign(int k, int i) const;
  /// Whether b_i (x) t^level creates (lies in G_-).
  bool creates(int level, int i) const;
};

/// Fock module of the Heisenberg subalgebra on the Cartan directions `dirs`
/// (which must be orthogonal to each other and to the remaining directions).
/// Basis: monomials in the creating modes; creators multiply, annihilators act
/// as k (b_i, b_i) a times the derivative in their partner.
/// Key: flattened sorted (direction, level) pairs.
class FockModule : public WeightModule {
 public:
  FockModule(AlgebraPtr alg, std::vector<int> dirs, TriangularSpec spec, Lambda lambda);

  Root shift(const Key& k) const override;
  int degree(const Key& k) const override;
  int fin_degree(const Key&) const override { return 0; }
  bool acts(const Mode& m) const override;
  std::vector<Key> basis(const Box& box) const override;
  Key generator() const override { return {}; }
  std::string describe(const Key& k) const override;

  const std::vector<int>& directions() const { return dirs_; }
  const TriangularSpec& spec() const { return spec_; }

 protected:
  Vec act_nondiagonal(const Mode& m, const Key& k) const override;

 private:
  std::vector<int> dirs_;
  TriangularSpec spec_;
};

/// The Heisenberg directions `dirs` act by zero; basis vectors sit at the given
/// delta grades. Requires charge 0 unless `dirs` is empty (then it is a sum of
/// one-dimensional modules C_lambda). With no grades this is the zero module.
class ZeroActionModule : public WeightModule {
 public:
  ZeroActionModule(AlgebraPtr alg, std::vector<int> dirs, Lambda lambda, std::vector<int> grades);

  Root shift(const Key& k) const override;
  int degree(const Key& k) const override { return std::abs(k.at(0)); }
  int fin_degree(const Key&) const override { return 0; }
  bool acts(const Mode& m) const override;
  std::vector<Key> basis(const Box& box) const override;
  Key generator() const override;

 protected:
  Vec act_nondiagonal(const Mode&, const Key&) const override { return {}; }

 private:
  std::vector<int> dirs_;
  std::vector<int> grades_;
};

/// Tensor product of two weight modules.
///  - Diagonal: both factors carry the same subalgebra, which acts by the
///    coproduct; charges add.
///  - Levi: M (x) S with M over l^0 and S over G(l)^perp + Cd. Modes acting on
///    S go to S, all others to M; equal charges required, c acts once.
class TensorModule : public WeightModule {
 public:
  enum class Routing { Diagonal, Levi };
  TensorModule(ModulePtr left, ModulePtr right, Routing routing);

  Root shift(const Key& k) const override;
  int degree(const Key& k) const override;
  int fin_degree(const Key& k) const override;
  bool acts(const Mode& m) const override;
  std::vector<Key> basis(const Box& box) const override;
  Key generator() const override;
  std::string describe(const Key& k) const override;

  const WeightModule& left() const { return *left_; }
  const WeightModule& right() const { return *right_; }

 protected:
  Vec act_nondiagonal(const Mode& m, const Key& k) const override;

 private:
  static Lambda combined(const WeightModule& l, const WeightModule& r, Routing routing);
  ModulePtr left_, right_;
  Routing routing_;
};

/// Checks [x, y] acts as the commutator of the actions on every basis vector of
/// the box, for all pairs of acting modes with |level| <= mode_box.
bool verify_relations(const WeightModule& m, const Box& box, int mode_box);

enum class AdmissibleVerdict { AdmissibleInBox, NotAdmissible, Inconclusive };
std::string admissible_name(AdmissibleVerdict v);

struct AdmissibilityReport {
  AdmissibleVerdict verdict = AdmissibleVerdict::AdmissibleInBox;
  int level = 0;
  /// Direction that worked for every pair: "raising", "lowering", or empty.
  std::string direction;
  int cyclic_submodules = 0;
  /// A pair that failed in both directions, or for which no decision was reached.
  std::optional<std::pair<Vec, Vec>> witness;
};

/// Box-scoped admissibility at level k. For every cyclic G_k-submodule M'
/// generated by a box basis vector, pairs (v1, v2) of weight-space basis
/// vectors of M' are tested for v in M' and u_i in U(g_{k delta}) (resp.
/// U(g_{-k delta})) with v_i = u_i v; v is searched up to twice the box depth.
/// With one oscillator per level the test is an exact linear solve; with more
/// it tries basis candidates for v and reports inconclusive on failure.
AdmissibilityReport check_admissible(const WeightModule& s, int k, const Box& box);

struct TwoSumsReport {
  int n = 0;
  Vec sum_plus;   // sum_i x_{N - k_i} w_i
  Vec sum_minus;  // sum_i x_{-N - k_i} w_i
  bool verdict = false;
};

/// Evaluates both sums exactly. `osc(level)` gives the oscillator used at each
/// level. w_i must be weight vectors with shift(w_1) - shift(w_i) = k_i delta,
/// k_1 = 0 and k_i strictly increasing; N must exceed every k_i.
TwoSumsReport heis_two_sums(const WeightModule& s, const std::function<AlgElement(int)>& osc,
                            const std::vector<Vec>& w, const std::vector<int>& offsets, int n);

}  // namespace ivm
