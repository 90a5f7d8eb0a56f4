#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "module.hpp"
#include "partitions.hpp"

namespace ivm {

/// Nondecreasing list of lower modes (repeats are powers).
using Word = std::vector<Mode>;

/// U(g) (x)_{U(p)} V realized on U(lower) (x) V with PBW straightening.
/// Key: [number of factors, (kind, level, index) per factor, V key...].
/// The action is exact and independent of the box; memoized per (mode, key)
/// in a cache that is safe for concurrent use.
class InducedModule : public WeightModule {
 public:
  /// Rejects V when it does not act on some Levi mode, or when an upper mode
  /// acts on V nontrivially within `check`.
  InducedModule(std::shared_ptr<const ModeSplit> split, ModulePtr v, const Box& check = {2, 2});

  Root shift(const Key& k) const override;
  int degree(const Key& k) const override;
  int fin_degree(const Key& k) const override;
  bool acts(const Mode& m) const override;
  std::vector<Key> basis(const Box& box) const override;
  Key generator() const override;
  std::string describe(const Key& k) const override;

  const ModeSplit& split() const { return *split_; }
  const std::shared_ptr<const ModeSplit>& split_ptr() const { return split_; }
  const WeightModule& inducing() const { return *v_; }
  const ModulePtr& inducing_ptr() const { return v_; }

  static Key make_key(const Word& w, const Key& v);
  static std::pair<Word, Key> split_key(const Key& k);
  /// Lower modes with |level| <= depth and |finite height| <= height.
  std::vector<Mode> lower_modes(const Box& box) const;
  /// Nondiagonal modes that act on the module and annihilate the generator of
  /// V: upper modes and the raising part of the inducing data.
  std::vector<Mode> raising_modes(int mode_box) const;

  std::size_t cache_size() const;

 protected:
  Vec act_nondiagonal(const Mode& m, const Key& k) const override;

 private:
  Vec apply(const Mode& x, const Word& w, const Key& v) const;
  Vec apply(const Mode& x, const Vec& u) const;
  Vec apply(const AlgElement& x, const Word& w, const Key& v) const;

  std::shared_ptr<const ModeSplit> split_;
  ModulePtr v_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Mode, Key>, Vec> cache_;
};

int mode_height(const AffineAlgebra& alg, const Mode& m);

/// Independent character computation: the generating function of PBW
/// monomials in the boxed lower modes, convolved with the character of V,
/// both graded by (shift, depth, height) and cut at the box.
std::map<Root, int> character_oracle(const InducedModule& m, const Box& box);

/// Height of the part of the weight outside the omega directions: minus the sum
/// of the coefficients of the simple roots not in omega. v must be homogeneous.
int u_height(const WeightModule& m, const Vec& v, const std::vector<int>& omega);

/// Minus the sum of the coefficients of a root-lattice element written over the
/// affine simple roots alpha_0..alpha_n (delta = alpha_0 + theta).
int affine_height(const AffineAlgebra& alg, const Root& shift);

struct WeightSpaceResult {
  Root shift;
  int dimension = 0;
  std::vector<Vec> singular;  // reduced-echelon basis of the singular subspace
};

struct Certificate {
  enum class Kind { SingularList, Cyclicity };
  Kind kind = Kind::SingularList;
  Box box;
  std::vector<std::string> raising;  // mode names used
  std::vector<WeightSpaceResult> spaces;
  int singular_total = 0;

  // Cyclicity: per basis vector, the word (applied right to left) or none.
  struct Reach {
    Key key;
    std::optional<std::vector<Mode>> word;
  };
  std::vector<Reach> reach;
  int unreached = 0;
};

/// Exact nullspace of the stacked raising-mode actions on each boxed weight
/// space. Raising modes have |level| <= box.depth + extra_levels.
/// Weight spaces are processed in parallel on `jobs` threads.
Certificate singular_vectors(const InducedModule& m, const Box& box, int extra_levels = 1, int jobs = 1);

/// For every boxed basis vector, a word of modes that moves its weight to the
/// generator's weight one step at a time and has nonzero generator coefficient.
/// The word is re-verified by direct application.
Certificate cyclicity_certificate(const InducedModule& m, const Box& box, int extra_levels = 1, int jobs = 1);

}  // namespace ivm
