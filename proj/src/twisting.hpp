#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "induced.hpp"
#include "wakimoto.hpp"

namespace ivm {

/// M_f / M for a module M on which the mode f acts injectively, presented by
/// formal sums of f^{-n} (x) m with n >= 1.
/// Key: [n, M key...]. Keys span the module but are not independent:
/// f^{-n} (x) f m = f^{-n+1} (x) m and f^0 (x) m = 0. Use `is_zero` to compare.
class LocalizedModule : public WeightModule {
 public:
  /// `n_bound` limits the exponents listed by `basis`; the action is unbounded.
  LocalizedModule(ModulePtr m, Mode f, int n_bound);

  Root shift(const Key& k) const override;
  int degree(const Key& k) const override;
  int fin_degree(const Key& k) const override;
  bool acts(const Mode& x) const override;
  /// Spanning set: f^{-n} (x) b for 1 <= n <= n_bound and b in the boxed basis of M.
  std::vector<Key> basis(const Box& box) const override;
  Key generator() const override;
  std::string describe(const Key& k) const override;

  const WeightModule& base() const { return *m_; }
  const ModulePtr& base_ptr() const { return m_; }
  const Mode& f() const { return f_; }
  int n_bound() const { return n_bound_; }

  static Key make_key(int n, const Key& m) { return concat_keys(Key{n}, m); }
  static std::pair<int, Key> split_key(const Key& k) { return {k.at(0), Key(k.begin() + 1, k.end())}; }

  /// Exact test for membership of a formal sum in M (zero in M_f / M).
  /// M must be graded by level: every basis vector has degree equal to
  /// |level of its shift| and finitely many basis vectors per weight.
  bool is_zero(const Vec& v) const;

 protected:
  Vec act_nondiagonal(const Mode& x, const Key& k) const override;

 private:
  ModulePtr m_;
  Mode f_;
  int n_bound_;
  Root alpha_;
};

/// ad(f)^k(x) for k = 0, 1, ... until it vanishes.
std::vector<AlgElement> ad_series(const AffineAlgebra& alg, const Mode& f, const AlgElement& x);

/// binom(n + k - 1, k) as an exact rational.
Rational multichoose(int n, int k);

/// Positive real root of the Levi factor given by a finite root in the span of
/// omega and a level; f is the root vector of its negative.
struct TwistRoot {
  int root = 0;
  int level = 0;
};

/// The pair T(I(V)) and I(T(V)) for a parabolic induction and the series
/// isomorphism between them.
class Twisting {
 public:
  Twisting(std::shared_ptr<const InducedModule> iv, TwistRoot alpha, int n_bound);

  const InducedModule& induced() const { return *iv_; }
  const Mode& f() const { return f_; }
  /// T(I(V)), keys [n, I(V) key].
  const LocalizedModule& source() const { return *source_; }
  /// I(T(V)), keys [word, n, V key].
  const InducedModule& target() const { return *target_; }
  const LocalizedModule& twisted_inducing() const { return *tv_; }

  /// ad(f) (x) 1 on U(lower) (x) V.
  Vec ad_f(const Vec& w) const;
  /// f^{-n} u (x) v  ->  sum_k (-1)^k binom(n+k-1, k) ad(f)^k(u) (x) f^{-n-k} v
  Vec forward(const Vec& s) const;
  /// u (x) f^{-n} v  ->  sum_k binom(n+k-1, k) f^{-n-k} ad(f)^k(u) (x) v
  Vec backward(const Vec& t) const;
  /// Exact zero test in I(T(V)).
  bool target_is_zero(const Vec& t) const;

  Key source_key(int n, const Key& iv_key) const { return LocalizedModule::make_key(n, iv_key); }
  Key target_key(int n, const Key& iv_key) const;

 private:
  std::vector<Vec> ad_powers(const Key& iv_key) const;

  std::shared_ptr<const InducedModule> iv_;
  Mode f_;
  std::shared_ptr<LocalizedModule> source_;
  std::shared_ptr<LocalizedModule> tv_;
  std::shared_ptr<InducedModule> target_;
};

struct IntertwineWitness {
  std::string check;  // "roundtrip", "equivariance" or "relation"
  std::string mode;
  Key sample;
  Vec defect;
};

struct IntertwineReport {
  long samples = 0;
  long roundtrip_checks = 0;
  long equivariance_checks = 0;
  long relation_checks = 0;
  bool roundtrip_ok = true;
  bool equivariance_ok = true;
  bool relations_ok = true;
  std::vector<std::pair<Key, bool>> roundtrip;  // per sample (source key)
  std::vector<IntertwineWitness> witnesses;      // first few failures
  bool ok() const { return roundtrip_ok && equivariance_ok && relations_ok; }
};

/// Samples f^{-n} (x) b for 1 <= n <= n_bound and b in the boxed basis of I(V).
/// Checks both composites of the series maps, equivariance for every mode with
/// |level| <= mode_bound, and that f^{-n} (x) f b - f^{-n+1} (x) b maps to zero.
IntertwineReport verify_intertwining(const Twisting& t, const Box& sample_box, int n_bound, int mode_bound,
                                     int jobs = 1);

struct TwistCharacterReport {
  std::map<Root, std::pair<int, int>> dims;  // weight -> (T(W), W(T(V)))
  bool equal = true;
  bool injective = true;  // f injective on every weight space used
  bool stable = true;     // localized dimensions stabilized in the exponent
  bool ok() const { return equal && injective && stable; }
};

/// Compares the boxed characters of T(IW(V)) and IW(T(V)). The left side uses
/// ranks of powers of the realized f on the Wakimoto carrier; the right side
/// combines the oscillator monomials with localized dimensions of V.
TwistCharacterReport twisted_wakimoto_character(const WakimotoModule& w, TwistRoot alpha, const Box& box,
                                                int n_bound);

}  // namespace ivm
