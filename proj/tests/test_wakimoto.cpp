#include "doctest.h"

#include <random>
#include <string>

#include "heisenberg.hpp"
#include "wakimoto.hpp"

using namespace ivm;

namespace {

using K = OscMode::Kind;

Lambda weight(int rank, Rational a, RowVec h = {}) {
  Lambda l;
  l.h = h.empty() ? RowVec(static_cast<std::size_t>(rank), 0) : h;
  l.c = a;
  return l;
}

struct Setup {
  std::shared_ptr<Parabolic> p;
  std::shared_ptr<Realization> r;
  ModulePtr v;
  std::shared_ptr<WakimotoModule> w;
  std::shared_ptr<InducedModule> m;
};

// V = Fock over the whole Heisenberg part (omega empty), or Verma over the
// Levi factor tensored with Fock over G(l)^perp.
Setup make(const char* type, std::vector<int> omega, Rational a, RowVec h = {}) {
  Setup s;
  s.p = std::make_shared<Parabolic>(AffineAlgebra(CartanType::parse(type)), omega, ImaginarySpec::Full);
  const auto& g = s.p->algebra();
  const int n = g->rank();
  std::vector<int> perp;
  for (int i = s.p->levi_directions(); i < n; ++i) perp.push_back(i);
  if (omega.empty()) {
    s.v = std::make_shared<FockModule>(g, perp, TriangularSpec::standard(), weight(n, a, h));
  } else {
    auto c = std::make_shared<ZeroActionModule>(g, std::vector<int>{}, weight(n, a, h), std::vector<int>{0});
    auto mv = std::make_shared<InducedModule>(std::make_shared<LeviBorel>(s.p), c);
    auto f = std::make_shared<FockModule>(g, perp, TriangularSpec::standard(), weight(n, a));
    s.v = std::make_shared<TensorModule>(mv, f, TensorModule::Routing::Levi);
  }
  s.r = std::make_shared<Realization>(s.p);
  s.w = imaginary_wakimoto_functor(s.r, s.v);
  s.m = std::make_shared<InducedModule>(s.p, s.v);
  return s;
}

WeylPoly osc(K k, int r, int n) { return WeylPoly::osc({k, r, n}); }

}  // namespace

TEST_CASE("weyl_product_examples") {
  const auto lhs = weyl_product(osc(K::A, 0, 1), osc(K::AStar, 0, -1));
  CHECK(lhs == weyl_product(osc(K::AStar, 0, -1), osc(K::A, 0, 1)) + WeylPoly::constant(1));
  const auto indep = weyl_product(osc(K::A, 0, 1), osc(K::AStar, 1, -1));
  CHECK(indep == weyl_product(osc(K::AStar, 1, -1), osc(K::A, 0, 1)));
  CHECK(indep.terms().size() == 1);
  const auto s2a = weyl_product(weyl_product(osc(K::AStar, 0, 0), osc(K::AStar, 0, 0)), osc(K::A, 0, 0));
  CHECK(s2a.terms().size() == 1);
  CHECK(s2a.terms().begin()->first.star.at({0, 0}) == 2);
  CHECK(s2a.terms().begin()->first.ann.at({0, 0}) == 1);
  // A(0,0)^2 AStar(0,0)^2 = AStar^2 A^2 + 4 AStar A + 2
  const auto a2 = weyl_product(osc(K::A, 0, 0), osc(K::A, 0, 0));
  const auto s2 = weyl_product(osc(K::AStar, 0, 0), osc(K::AStar, 0, 0));
  const auto sa = weyl_product(osc(K::AStar, 0, 0), osc(K::A, 0, 0));
  CHECK(weyl_product(a2, s2) == weyl_product(s2, a2) + Rational(4) * sa + WeylPoly::constant(2));
}

TEST_CASE("weyl_product_is_associative") {
  std::mt19937 rng(3);
  auto random_poly = [&] {
    WeylPoly p;
    for (int t = 0; t < 3; ++t) {
      WeylPoly mono = WeylPoly::constant(static_cast<long>(rng() % 5) - 2);
      for (int f = 0; f < 3; ++f)
        mono = weyl_product(mono, osc(rng() % 2 ? K::A : K::AStar, static_cast<int>(rng() % 2), static_cast<int>(rng() % 3) - 1));
      p = p + mono;
    }
    return p;
  };
  for (int i = 0; i < 40; ++i) {
    const auto a = random_poly(), b = random_poly(), c = random_poly();
    CHECK(weyl_product(weyl_product(a, b), c) == weyl_product(a, weyl_product(b, c)));
  }
}

TEST_CASE("a1_realization_fields") {
  auto s = make("A1", {}, 1);
  const auto& g = s.p->algebra();
  const int e = g->simple_root_index(0), f = g->negative_of(e);
  const auto& ff = s.r->field(Mode::real(f, 0));
  REQUIRE(ff.size() == 1);
  CHECK(ff[0].last == FieldTerm::Last::A);
  CHECK(ff[0].coeff == -1);
  CHECK(ff[0].gammas.empty());
  // pi(h) = h(z) + 2 :a gamma:, no anomaly term
  int levi = 0, bilinear = 0, anomaly = 0;
  for (const auto& t : s.r->field(Mode::cartan(0, 0))) {
    if (t.last == FieldTerm::Last::Levi) ++levi;
    if (t.last == FieldTerm::Last::A && t.gammas.size() == 1 && t.coeff == 2) ++bilinear;
    if (t.last == FieldTerm::Last::DGamma) ++anomaly;
  }
  CHECK(levi == 1);
  CHECK(bilinear == 1);
  CHECK(anomaly == 0);
  // pi(e) = :a gamma^2: + gamma h(z) - a dgamma
  int dg = 0;
  for (const auto& t : s.r->field(Mode::real(e, 0)))
    if (t.last == FieldTerm::Last::DGamma) dg += (t.coeff == -1);
  CHECK(dg == 1);
  CHECK(s.r->max_ad_power() <= 2);
  // pi(f)_n on the window is -A(alpha, n)
  CHECK(s.r->mode_polynomial(Mode::real(f, 0), 2, 3, 1) == Rational(-1) * osc(K::A, 0, 2));
}

TEST_CASE("central_element_acts_by_charge") {
  auto s = make("A1", {}, Rational(-2));
  for (const auto& k : s.w->basis({2, 1})) CHECK(s.w->act(Mode::central(), k) == Vec(k, -2));
}

TEST_CASE("homomorphism_relations_a1_a2") {
  for (const char* type : {"A1", "A2"}) {
    for (Rational a : {Rational(0), Rational(1), Rational(-2)}) {
      auto s = make(type, {}, a, {});
      const int d = std::string(type) == "A1" ? 3 : 2;
      auto rep = verify_homomorphism(*s.w, 2, {d, d});
      CHECK(rep.ok());
      CHECK(rep.checks > 0);
    }
  }
  auto s = make("A2", {0}, 1, {Rational(1, 3), 0});
  CHECK(verify_homomorphism(*s.w, 1, {2, 2}).ok());
}

TEST_CASE("level_zero_cartan_fields_match_weights") {
  for (auto s : {make("A2", {}, 1, {Rational(1, 2), 2}), make("A2", {1}, 1, {0, Rational(1, 3)})}) {
    for (const auto& k : s.w->basis({2, 2}))
      for (int i = 0; i < 2; ++i) CHECK(s.w->act_field(Mode::cartan(i, 0), k) == s.w->act(Mode::cartan(i, 0), k));
  }
}

TEST_CASE("wakimoto_character_equals_induced") {
  for (auto s : {make("A1", {}, 1), make("A2", {}, 1), make("A2", {0}, 1, {Rational(1, 3), 0})})
    for (Box b : {Box{2, 2}, Box{3, 1}}) CHECK(character(*s.w, b) == character(*s.m, b));
}

TEST_CASE("upper_modes_kill_pure_inducing_vectors") {
  auto s = make("A2", {0}, 1, {Rational(1, 3), 0});
  const auto& g = *s.p->algebra();
  for (const auto& vk : s.v->basis({2, 2})) {
    const Key k = concat_keys(Key{0}, vk);
    for (const auto& x : s.p->modes_of(Part::Upper, 2)) CHECK(s.w->act(x, k).empty());
  }
  // d-eigenvalue of a_{alpha,-1} (x) v
  auto t = make("A1", {}, 1);
  const Key x{1, 0, -1};
  CHECK(t.w->act(Mode::derivation(), x) == Vec(x, -1));
  (void)g;
}

TEST_CASE("matching_with_induced_module") {
  {
    auto s = make("A1", {}, 1, {Rational(1, 3)});
    auto rep = match_to_verma(*s.w, *s.m, {2, 2}, 2);
    CHECK(rep.equivariant);
    CHECK(rep.isomorphism);
    for (const auto& b : rep.blocks)
      if (b.shift == Root{{0}, 0}) CHECK(b.dimension == 1);
  }
  {
    auto s = make("A1", {}, 0, {Rational(1, 3)});
    auto rep = match_to_verma(*s.w, *s.m, {2, 2}, 2);
    CHECK(rep.equivariant);
    MESSAGE("charge 0 isomorphism in box: " << rep.isomorphism);
  }
  {
    auto s = make("A2", {0}, 1, {Rational(1, 3), 0});
    auto rep = match_to_verma(*s.w, *s.m, {2, 2}, 1);
    CHECK(rep.equivariant);
    CHECK(rep.isomorphism);
  }
}

TEST_CASE("functor_on_zero_module") {
  auto p = std::make_shared<Parabolic>(AffineAlgebra(CartanType::parse("A1")), std::vector<int>{}, ImaginarySpec::Full);
  auto r = std::make_shared<Realization>(p);
  auto z = std::make_shared<ZeroActionModule>(p->algebra(), std::vector<int>{0}, weight(1, 0), std::vector<int>{});
  auto w = imaginary_wakimoto_functor(r, z);
  CHECK(w->basis({3, 3}).empty());
}

TEST_CASE("realization_needs_full_heisenberg") {
  auto p = std::make_shared<Parabolic>(AffineAlgebra(CartanType::parse("A1")), std::vector<int>{}, ImaginarySpec::LeviOnly);
  CHECK_THROWS_AS(Realization{p}, std::invalid_argument);
}
