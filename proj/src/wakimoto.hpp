#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "induced.hpp"
#include "module.hpp"
#include "partitions.hpp"

namespace ivm {

/// Oscillator of the infinite-rank Weyl algebra on the coordinates of the
/// opposite nilradical. `root` indexes the nilradical roots (see Realization).
/// [A(a,m), AStar(b,n)] = delta_ab delta_{m+n,0}.
struct OscMode {
  enum class Kind { A, AStar };
  Kind kind = Kind::A;
  int root = 0;
  int n = 0;
  auto operator<=>(const OscMode&) const = default;
};

/// Normal-ordered element of the Weyl algebra: every AStar left of every A,
/// optionally followed by currents of the Levi factor (kept in order).
class WeylPoly {
 public:
  struct Monomial {
    std::map<std::pair<int, int>, int> star;  // (root, n) -> power of AStar(root, n)
    std::map<std::pair<int, int>, int> ann;   // (root, n) -> power of A(root, n)
    std::vector<Mode> currents;
    auto operator<=>(const Monomial&) const = default;
  };

  WeylPoly() = default;
  static WeylPoly constant(const Rational& c);
  static WeylPoly osc(const OscMode& m);
  static WeylPoly current(const Mode& m);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Monomial& m, const Rational& c);

  friend WeylPoly operator+(const WeylPoly& a, const WeylPoly& b);
  friend WeylPoly operator*(const Rational& s, const WeylPoly& a);
  friend bool operator==(const WeylPoly& a, const WeylPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& root_names, const AffineAlgebra& alg) const;

 private:
  std::map<Monomial, Rational> terms_;
};

WeylPoly weyl_product(const WeylPoly& p, const WeylPoly& q);

/// One term of a realized field: coeff * gamma_{g_1}(z) ... gamma_{g_k}(z) * last(z),
/// normal ordered with the creating factor (a_alpha) to the left of the gammas.
struct FieldTerm {
  enum class Last { A, Levi, DGamma };
  Rational coeff;
  std::vector<int> gammas;  // sorted nilradical indices
  Last last = Last::A;
  int root = 0;             // nilradical index for A and DGamma
  Mode levi;                // level-0 mode of the Levi factor for Levi
  /// DGamma terms carry the charge a as an extra factor.
};

/// Free-field realization of g-hat attached to a natural parabolic with the
/// Heisenberg part in the Levi factor. Fields are computed from
///   -sum_alpha a_alpha [F(ad u)(e^{-ad u} b)_{u-bar}]_alpha + (e^{-ad u} b)_l
///   - a (G(ad u) du, b),   u = sum_alpha gamma_alpha f_alpha,
/// with F(x) = x e^x / (e^x - 1) and G(x) = (e^x - 1) / x; all series stop
/// because ad u is nilpotent. The u-part of the p-projection acts by zero on V
/// and is dropped.
class Realization {
 public:
  explicit Realization(std::shared_ptr<const Parabolic> p);

  const Parabolic& parabolic() const { return *p_; }
  const AffineAlgebra& algebra() const { return *p_->algebra(); }
  /// Positive roots alpha outside the omega span; f_alpha = e_{-alpha}.
  const std::vector<int>& nilradical() const { return nil_; }
  int nil_index(int positive_root) const;

  /// Field of a level-0 basis element of g (Real or Cartan mode).
  const std::vector<FieldTerm>& field(const Mode& b) const;
  /// Largest power of ad u met while building (the nilpotency guard).
  int max_ad_power() const { return max_power_; }

  /// Mode n of the field of b restricted to oscillator modes |k| <= window,
  /// as a normal-ordered Weyl polynomial; charge a substituted.
  WeylPoly mode_polynomial(const Mode& b, int n, int window, const Rational& a) const;
  std::string field_to_string(const Mode& b) const;
  std::vector<std::string> root_names() const;

 private:
  std::shared_ptr<const Parabolic> p_;
  std::vector<int> nil_;
  std::map<Mode, std::vector<FieldTerm>> fields_;
  int max_power_ = 0;
};

/// Pol(u-bar coordinates) (x) V with g-hat acting through the realization.
/// Key: [number of variables, (nilradical index, n) per variable, V key...];
/// the variable (alpha, n) is the creating oscillator a_{alpha,n}, of weight
/// -alpha + n delta. AStar(alpha, n) acts as minus the derivative in (alpha, -n).
class WakimotoModule : public WeightModule {
 public:
  WakimotoModule(std::shared_ptr<const Realization> r, ModulePtr v);

  Root shift(const Key& k) const override;
  int degree(const Key& k) const override;
  int fin_degree(const Key& k) const override;
  bool acts(const Mode& m) const override;
  std::vector<Key> basis(const Box& box) const override;
  Key generator() const override;
  std::string describe(const Key& k) const override;

  const Realization& realization() const { return *r_; }
  const WeightModule& inducing() const { return *v_; }
  /// Action through the fields for every mode, including level-0 Cartan modes.
  Vec act_field(const Mode& m, const Key& k) const;
  Vec act_field(const Mode& m, const Vec& v) const;

 protected:
  Vec act_nondiagonal(const Mode& m, const Key& k) const override;

 private:
  std::shared_ptr<const Realization> r_;
  ModulePtr v_;
};

struct HomomorphismViolation {
  Mode x, y;
  Key key;
  Vec defect;
};

struct HomomorphismReport {
  long checks = 0;
  std::vector<HomomorphismViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// For Chevalley generators x, y (e_i, f_i and the Cartan basis) and
/// |m|, |n| <= mode_bound checks [x_m, y_n] = [x, y]_{m+n} + m delta_{m+n,0} (x, y) a
/// on every basis vector of the box, all modes acting through the fields.
HomomorphismReport verify_homomorphism(const WakimotoModule& w, int mode_bound, const Box& box, int jobs = 1);

struct MatchBlock {
  Root shift;
  int dimension = 0;
  int rank = 0;
};

struct MatchReport {
  bool equivariant = true;
  bool isomorphism = true;   // equivariant and every block has full rank
  std::vector<MatchBlock> blocks;
  std::optional<Root> rank_drop;
  std::optional<std::pair<Mode, Key>> equivariance_failure;
};

/// The map M -> W sending the PBW monomial y_1...y_k (x) v to
/// y_1...y_k (1 (x) v); checks equivariance for modes |level| <= mode_bound on
/// the boxed basis and the rank of each boxed weight block.
MatchReport match_to_verma(const WakimotoModule& w, const InducedModule& m, const Box& box, int mode_bound);

/// The functor V -> W(V) for fixed realization data.
std::shared_ptr<WakimotoModule> imaginary_wakimoto_functor(std::shared_ptr<const Realization> r, ModulePtr v);

}  // namespace ivm
