#include "doctest.h"

#include "heisenberg.hpp"
#include "twisting.hpp"

using namespace ivm;

namespace {

struct Setup {
  std::shared_ptr<Parabolic> p;
  ModulePtr v;
  std::shared_ptr<InducedModule> iv;
  std::shared_ptr<Twisting> t;
  Mode x, y;  // x = e_{-alpha_2}; [f, x] = y, [f, y] = 0
  Rational xy;  // [f, x] = xy * y
};

// A2 with Levi sl2 on the first simple root; V = Verma over the Levi factor
// tensored with the Fock module on the orthogonal Heisenberg direction.
Setup make(Rational a = 1, int n_bound = 3) {
  Setup s;
  s.p = std::make_shared<Parabolic>(AffineAlgebra(CartanType::parse("A2")), std::vector<int>{0}, ImaginarySpec::Full);
  const auto& g = s.p->algebra();
  Lambda l{{Rational(1, 3), 0}, a, 0};
  Lambda l0{{0, 0}, a, 0};
  auto c = std::make_shared<ZeroActionModule>(g, std::vector<int>{}, l, std::vector<int>{0});
  auto mv = std::make_shared<InducedModule>(std::make_shared<LeviBorel>(s.p), c);
  auto f = std::make_shared<FockModule>(g, std::vector<int>{1}, TriangularSpec::standard(), l0);
  s.v = std::make_shared<TensorModule>(mv, f, TensorModule::Routing::Levi);
  s.iv = std::make_shared<InducedModule>(s.p, s.v);
  s.t = std::make_shared<Twisting>(s.iv, TwistRoot{g->simple_root_index(0), 0}, n_bound);
  s.x = Mode::real(g->negative_of(g->simple_root_index(1)), 0);
  const auto br = g->bracket(s.t->f(), s.x);
  REQUIRE(br.size() == 1);
  s.y = br.begin()->first;
  s.xy = br.begin()->second;
  return s;
}

Key ivkey(const Setup& s, Word w) { return InducedModule::make_key(w, s.v->generator()); }

}  // namespace

TEST_CASE("multichoose_values") {
  CHECK(multichoose(1, 0) == 1);
  CHECK(multichoose(1, 1) == 1);
  CHECK(multichoose(2, 1) == 2);
  CHECK(multichoose(2, 2) == 3);
  CHECK(multichoose(3, 2) == 6);
  CHECK(multichoose(4, 3) == 20);
}

TEST_CASE("ad_series_lengths") {
  auto s = make();
  const auto& g = *s.p->algebra();
  const int e1 = g.simple_root_index(0);
  CHECK(ad_series(g, s.t->f(), AlgElement(Mode::real(e1, 0), 1)).size() == 3);
  CHECK(ad_series(g, s.t->f(), AlgElement(s.x, 1)).size() == 2);
  CHECK(ad_series(g, s.t->f(), AlgElement(s.t->f(), 1)).size() == 1);
}

TEST_CASE("forward_series_examples") {
  auto s = make();
  const auto& t = *s.t;
  const Key one = ivkey(s, {}), kx = ivkey(s, {s.x}), ky = ivkey(s, {s.y});
  for (int n = 1; n <= 3; ++n) CHECK(t.forward(Vec(t.source_key(n, one), 1)) == Vec(t.target_key(n, one), 1));
  Vec e1(t.target_key(1, kx), 1);
  e1.add(t.target_key(2, ky), -s.xy);
  CHECK(t.forward(Vec(t.source_key(1, kx), 1)) == e1);
  Vec e2(t.target_key(2, kx), 1);
  e2.add(t.target_key(3, ky), -2 * s.xy);
  CHECK(t.forward(Vec(t.source_key(2, kx), 1)) == e2);
}

TEST_CASE("backward_series_examples") {
  auto s = make();
  const auto& t = *s.t;
  const Key one = ivkey(s, {}), kx = ivkey(s, {s.x}), ky = ivkey(s, {s.y});
  CHECK(t.backward(Vec(t.target_key(2, one), 1)) == Vec(t.source_key(2, one), 1));
  Vec e(t.source_key(1, kx), 1);
  e.add(t.source_key(2, ky), s.xy);
  CHECK(t.backward(Vec(t.target_key(1, kx), 1)) == e);
  const Vec sample(t.source_key(1, kx), 1);
  CHECK(t.backward(t.forward(sample)) == sample);
}

TEST_CASE("localized_quotient_relations") {
  auto s = make();
  const auto& tv = s.t->twisted_inducing();
  const Key g = s.v->generator();
  const Vec fg = s.v->act(s.t->f(), Vec(g, 1));
  Vec r1;
  for (const auto& [k, c] : fg) r1.add(LocalizedModule::make_key(1, k), c);
  CHECK(tv.is_zero(r1));
  CHECK_FALSE(tv.is_zero(Vec(LocalizedModule::make_key(1, g), 1)));
  Vec r2;
  for (const auto& [k, c] : fg) r2.add(LocalizedModule::make_key(2, k), c);
  r2.add(LocalizedModule::make_key(1, g), -1);
  CHECK(tv.is_zero(r2));
}

TEST_CASE("intertwining_holds_on_samples") {
  auto s = make();
  auto rep = verify_intertwining(*s.t, {1, 1}, 2, 1);
  CHECK(rep.samples > 0);
  CHECK(rep.roundtrip_ok);
  CHECK(rep.equivariance_ok);
  CHECK(rep.relations_ok);
  CHECK(rep.witnesses.empty());
  CHECK(rep.roundtrip.size() == static_cast<std::size_t>(rep.samples));
  auto two = verify_intertwining(*s.t, {1, 1}, 2, 1, 3);
  CHECK(two.equivariance_checks == rep.equivariance_checks);
  CHECK(two.roundtrip == rep.roundtrip);
}

TEST_CASE("empty_sample_set_passes") {
  auto s = make();
  auto rep = verify_intertwining(*s.t, {2, 2}, 0, 1);
  CHECK(rep.samples == 0);
  CHECK(rep.ok());
}

TEST_CASE("central_element_scales_both_sides") {
  auto s = make(Rational(5, 2));
  const auto& t = *s.t;
  const Vec sample(t.source_key(2, ivkey(s, {s.x})), 1);
  const Vec img = t.forward(sample);
  CHECK(t.target().act(Mode::central(), img) == Rational(5, 2) * img);
  CHECK(t.source().act(Mode::central(), sample) == Rational(5, 2) * sample);
}

TEST_CASE("naive_identification_is_not_equivariant") {
  // Dropping the series corrections: f^{-n} u (x) v -> u (x) f^{-n} v.
  auto s = make();
  const auto& t = *s.t;
  auto naive = [&](const Vec& src) {
    Vec out;
    for (const auto& [k, c] : src) {
      auto [n, b] = LocalizedModule::split_key(k);
      out.add(t.target_key(n, b), c);
    }
    return out;
  };
  bool failed = false;
  const Vec sample(t.source_key(1, ivkey(s, {s.x})), 1);
  for (const auto& g : s.p->algebra()->modes_in_box(1)) {
    const Vec d = t.target().act(g, naive(sample)) - naive(t.source().act(g, sample));
    if (!t.target_is_zero(d)) failed = true;
  }
  CHECK(failed);
}

TEST_CASE("twisting_root_must_lie_in_levi_and_be_positive") {
  auto s = make();
  const auto& g = *s.p->algebra();
  CHECK_THROWS_AS(Twisting(s.iv, TwistRoot{g.simple_root_index(1), 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(Twisting(s.iv, TwistRoot{g.negative_of(g.simple_root_index(0)), 0}, 2), std::invalid_argument);
  CHECK_NOTHROW(Twisting(s.iv, TwistRoot{g.simple_root_index(0), 1}, 2));
}

TEST_CASE("twisted_wakimoto_characters_agree") {
  auto s = make();
  auto r = std::make_shared<Realization>(s.p);
  auto w = imaginary_wakimoto_functor(r, s.v);
  auto rep = twisted_wakimoto_character(*w, {s.p->algebra()->simple_root_index(0), 0}, {1, 1}, 2);
  CHECK(rep.ok());
  CHECK(rep.dims.size() > 5);
  CHECK(rep.dims.at(zero_root(2)) == std::pair<int, int>{0, 0});
}
