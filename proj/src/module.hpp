#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "sparse.hpp"

namespace ivm {

/// Basis label of a module vector; each module defines its own encoding.
using Key = std::vector<int>;
using Vec = SparseVec<Key>;

/// Highest (or reference) weight: values on the simple coroots, on c and on d.
struct Lambda {
  RowVec h;
  Rational c = 0;
  Rational d = 0;
};

Lambda operator+(const Lambda& a, const Lambda& b);

/// Truncation box: `depth` bounds the total absolute mode level of a basis
/// vector, `height` bounds its total absolute finite height.
struct Box {
  int depth = 0;
  int height = 0;
};

/// A weight module for some subalgebra of the affine algebra, presented by a
/// basis of weight vectors. Every basis vector has weight lambda + shift(key).
/// Level-zero Cartan modes, c and d act diagonally and are handled here;
/// subclasses supply the remaining modes of the subalgebra they are modules for.
class WeightModule {
 public:
  WeightModule(AlgebraPtr alg, Lambda lambda);
  virtual ~WeightModule() = default;

  const AffineAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const Lambda& lambda() const { return lambda_; }
  Rational charge() const { return lambda_.c; }

  virtual Root shift(const Key& k) const = 0;
  /// Total absolute mode level of the basis vector.
  virtual int degree(const Key& k) const = 0;
  /// Total absolute finite height of the basis vector.
  virtual int fin_degree(const Key& k) const = 0;
  /// Whether the mode belongs to the subalgebra acting on this module.
  virtual bool acts(const Mode& m) const = 0;
  /// Basis vectors with degree <= box.depth and fin_degree <= box.height, sorted.
  virtual std::vector<Key> basis(const Box& box) const = 0;
  virtual Key generator() const = 0;
  virtual std::string describe(const Key& k) const;

  /// Exact action of a mode on a basis vector. Throws std::logic_error for a
  /// mode outside the acting subalgebra.
  Vec act(const Mode& m, const Key& k) const;
  Vec act(const Mode& m, const Vec& v) const;
  Vec act(const AlgElement& x, const Vec& v) const;

  /// Eigenvalue of b_i (x) t^0 on a basis vector.
  Rational cartan_eigenvalue(int i, const Key& k) const;
  Rational cartan_eigenvalue(int i, const Root& shift) const;

 protected:
  /// Real modes and Cartan modes of nonzero level.
  virtual Vec act_nondiagonal(const Mode& m, const Key& k) const = 0;

  AlgebraPtr alg_;
  Lambda lambda_;
  RowVec lambda_on_basis_;
};

using ModulePtr = std::shared_ptr<const WeightModule>;

/// Dimension of each boxed weight space, keyed by shift.
std::map<Root, int> character(const WeightModule& m, const Box& box);

/// Shift of a homogeneous vector; throws std::invalid_argument when mixed or zero.
Root homogeneous_shift(const WeightModule& m, const Vec& v);

struct BracketSampleReport {
  int samples = 0;
  int checked = 0;
  int skipped = 0;  // an intermediate left the enlarged box
  int failures = 0;
};

/// Random triples (x, y, b) with x, y acting modes of |level| <= mode_bound and
/// b a boxed basis vector; checks x(y b) - y(x b) = [x, y] b exactly. Triples
/// whose intermediates exceed depth box.depth + mode_bound are skipped.
BracketSampleReport sample_bracket_identity(const WeightModule& m, const Box& box, int mode_bound, int samples,
                                            std::uint64_t seed);

Key concat_keys(const Key& a, const Key& b);
/// Splits a key produced by `encode_pair`.
std::pair<Key, Key> decode_pair(const Key& k);
Key encode_pair(const Key& a, const Key& b);

Root add_roots(const Root& a, const Root& b);
Root zero_root(int rank);

}  // namespace ivm
