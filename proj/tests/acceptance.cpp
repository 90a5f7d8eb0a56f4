// Acceptance suite: one PASS/FAIL line per criterion. Limits are pinned here.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "heisenberg.hpp"
#include "induced.hpp"
#include "partitions.hpp"
#include "twisting.hpp"
#include "wakimoto.hpp"

using namespace ivm;

namespace {

constexpr std::uint64_t kSeed = 20240611;

int jobs() { return static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency()))); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // wall-clock budget
  std::function<void(Outcome&)> run;
};

Lambda weight(int rank, Rational a, RowVec h = {}) {
  Lambda l;
  l.h = h.empty() ? RowVec(static_cast<std::size_t>(rank), 0) : h;
  l.c = a;
  return l;
}

std::shared_ptr<Parabolic> parabolic(const char* type, std::vector<int> omega, ImaginarySpec spec = ImaginarySpec::Full) {
  return std::make_shared<Parabolic>(AffineAlgebra(CartanType::parse(type)), std::move(omega), spec);
}

std::vector<int> perp_dirs(const Parabolic& p) {
  std::vector<int> d;
  for (int i = p.levi_directions(); i < p.algebra()->rank(); ++i) d.push_back(i);
  return d;
}

// Verma over the Levi factor tensored with Fock on G(l)^perp; plain Fock when omega is empty.
ModulePtr inducing_module(const std::shared_ptr<Parabolic>& p, Rational a, RowVec h) {
  const auto& g = p->algebra();
  const int n = g->rank();
  if (p->levi_directions() == 0) return std::make_shared<FockModule>(g, perp_dirs(*p), TriangularSpec::standard(), weight(n, a, h));
  auto c = std::make_shared<ZeroActionModule>(g, std::vector<int>{}, weight(n, a, h), std::vector<int>{0});
  auto mv = std::make_shared<InducedModule>(std::make_shared<LeviBorel>(p), c);
  auto f = std::make_shared<FockModule>(g, perp_dirs(*p), TriangularSpec::standard(), weight(n, a));
  return std::make_shared<TensorModule>(mv, f, TensorModule::Routing::Levi);
}

std::vector<long> multipartitions(int m, int depth) {
  std::vector<long> p(static_cast<std::size_t>(depth + 1), 0);
  p[0] = 1;
  for (int r = 0; r < m; ++r)
    for (int k = 1; k <= depth; ++k)
      for (int n = k; n <= depth; ++n) p[static_cast<std::size_t>(n)] += p[static_cast<std::size_t>(n - k)];
  return p;
}

std::vector<long> depth_profile(const WeightModule& m, int depth) {
  std::vector<long> d(static_cast<std::size_t>(depth + 1), 0);
  for (const auto& k : m.basis({depth, 0})) ++d[static_cast<std::size_t>(m.degree(k))];
  return d;
}

// 1. Lie axioms

void algebra_axioms(Outcome& o) {
  long triples = 0;
  for (const char* type : {"A1", "A2"}) {
    AffineAlgebra g(CartanType::parse(type));
    const auto modes = g.modes_in_box(3);
    bool ok = true;
    for (const auto& x : modes)
      for (const auto& y : modes) {
        const auto xy = g.bracket(x, y);
        ok = ok && (xy + g.bracket(y, x)).empty();
        for (const auto& z : modes) {
          const AlgElement ex(x, 1), ey(y, 1), ez(z, 1);
          const auto jac = g.bracket(ex, g.bracket(y, z)) + g.bracket(ey, g.bracket(z, x)) + g.bracket(ez, xy);
          ok = ok && jac.empty() && g.form(xy, ez) + g.form(ey, g.bracket(x, z)) == 0;
          ++triples;
        }
      }
    o.require(ok, std::string(type) + " axioms");
  }
  o.detail << triples << " triples";
}

// 2. Partitions

void partition_suite(Outcome& o) {
  const int box = 3;
  int valid = 0;
  for (const char* type : {"A1", "A2"}) {
    AffineAlgebra g(CartanType::parse(type));
    const bool s = validate_quase_partition(g, standard_partition(g, box)).verdict == Verdict::Valid;
    const bool n = validate_quase_partition(g, natural_partition(g, box)).verdict == Verdict::Valid;
    o.require(s && n, std::string(type) + " standard/natural");
    valid += s + n;
    for (int mask = 0; mask < 8; ++mask) {
      SignTable phi;
      for (int i = 0; i < 3; ++i) phi.push_back((mask >> i) & 1 ? -1 : 1);
      const bool ok = validate_quase_partition(g, phi_partition(g, phi, box)).verdict == Verdict::Valid;
      o.require(ok, std::string(type) + " phi mask " + std::to_string(mask));
      valid += ok;
    }
  }
  AffineAlgebra g(CartanType::parse("A1"));
  auto roots = standard_partition(g, box).roots;
  roots.erase({{0}, 1});
  roots.insert({{0}, -1});
  const auto rep = validate_quase_partition(g, extensional_partition(roots, box));
  const bool witness = !rep.witnesses.empty() && rep.witnesses.front() == Root{{0}, 1};
  o.require(rep.verdict == Verdict::Invalid && witness, "violator rejected with witness delta");
  o.detail << valid << " partitions valid; violator " << verdict_name(rep.verdict) << " witness "
           << (rep.witnesses.empty() ? "none" : root_to_string(rep.witnesses.front()));
}

// 3. Oscillators and Fock characters

void fock_suite(Outcome& o) {
  auto g1 = std::make_shared<const AffineAlgebra>(CartanType::parse("A1"));
  auto g2 = parabolic("A2", {})->algebra();
  const auto specs = {TriangularSpec::standard(), TriangularSpec::opposite(), TriangularSpec::by_level({1, -1, 1})};
  for (const auto& spec : specs) {
    FockModule f1(g1, {0}, spec, weight(1, 2));
    o.require(verify_relations(f1, {4, 0}, 3), "A1 relations");
    o.require(HeisenbergBasis(g1).verify(3), "A1 oscillator basis");
    o.require(depth_profile(f1, 6) == multipartitions(1, 6), "A1 depth profile");
    FockModule f2(g2, {0, 1}, spec, weight(2, Rational(1, 2)));
    o.require(verify_relations(f2, {3, 0}, 3), "A2 relations");
    o.require(depth_profile(f2, 6) == multipartitions(2, 6), "A2 depth profile");
  }
  std::ostringstream s;
  for (long x : multipartitions(1, 6)) s << x << ' ';
  o.detail << "A1 depths 0..6: " << s.str() << "; A2 matches two-colour partitions";
}

// 4. Two-sums criterion

void two_sums_suite(Outcome& o) {
  auto g = std::make_shared<const AffineAlgebra>(CartanType::parse("A1"));
  HeisenbergBasis hb(g);
  auto osc = [&](int k) { return hb.oscillator(0, k); };
  int evaluations = 0;
  // w_1 = top vector, w_i = creation at level -k_i applied to it.
  auto sweep = [&](const WeightModule& m, const Vec& top, bool creates_negative, const std::string& label) {
    const std::vector<int> offsets{0, 1, 2};
    for (std::size_t count = 1; count <= 3; ++count) {
      std::vector<Vec> w{top};
      std::vector<int> offs{0};
      for (std::size_t i = 1; i < count; ++i) {
        const int k = offsets[i];
        w.push_back(m.act(osc(creates_negative ? -k : k), top));
        offs.push_back(k);
        o.require(!w.back().empty(), label + " sample vector");
      }
      if (!creates_negative) {
        // lowest-weight orientation: order by decreasing level means reversing
        std::reverse(w.begin(), w.end());
        const int top_k = offs.back();
        for (auto& k : offs) k = top_k - k;
        std::reverse(offs.begin(), offs.end());
      }
      for (int n = offs.back() + 1; n <= 20; ++n) {
        o.require(heis_two_sums(m, osc, w, offs, n).verdict, label + " N=" + std::to_string(n));
        ++evaluations;
      }
    }
  };
  FockModule fock(g, {0}, TriangularSpec::standard(), weight(1, 1));
  sweep(fock, Vec(fock.generator(), 1), true, "Fock");
  FockModule opp(g, {0}, TriangularSpec::opposite(), weight(1, 1));
  sweep(opp, Vec(opp.generator(), 1), false, "opposite Fock");
  // phi-Fock: levels 1 and 3 create on the negative side, level 2 on the positive side.
  FockModule phi(g, {0}, TriangularSpec::by_level({1, -1, 1}), weight(1, 1));
  {
    const Vec vac(phi.generator(), 1);
    std::vector<std::pair<int, Vec>> by_level{{0, vac}};
    for (int d : {1, 2}) {
      const int lvl = TriangularSpec::by_level({1, -1, 1}).creates(-d, 0) ? -d : d;
      by_level.emplace_back(lvl, phi.act(osc(lvl), vac));
    }
    std::sort(by_level.begin(), by_level.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t count = 1; count <= 3; ++count) {
      std::vector<Vec> w;
      std::vector<int> offs;
      for (std::size_t i = 0; i < count; ++i) {
        w.push_back(by_level[i].second);
        offs.push_back(by_level.front().first - by_level[i].first);
      }
      for (int n = offs.back() + 1; n <= 20; ++n) {
        o.require(heis_two_sums(phi, osc, w, offs, n).verdict, "phi-Fock N=" + std::to_string(n));
        ++evaluations;
      }
    }
  }
  auto l = std::make_shared<FockModule>(g, std::vector<int>{0}, TriangularSpec::standard(), weight(1, 1));
  auto lm = std::make_shared<FockModule>(g, std::vector<int>{0}, TriangularSpec::opposite(), weight(1, 1));
  TensorModule t(l, lm, TensorModule::Routing::Diagonal);
  sweep(t, Vec(t.generator(), 1), true, "L(a) (x) L(a)^-");
  ZeroActionModule z(g, {0}, weight(1, 0), {0});
  bool zero_false = true;
  for (int n = 1; n <= 20; ++n) zero_false = zero_false && !heis_two_sums(z, osc, {Vec(z.generator(), 1)}, {0}, n).verdict;
  o.require(zero_false, "zero module verdict false");
  o.detail << evaluations << " true evaluations; zero-action module false for N=1..20";
}

// 5. Loop-algebra certificate

bool is_multiple(const Vec& v, const Vec& u) {
  if (v.empty() || u.empty() || v.size() != u.size()) return false;
  const Rational r = v.begin()->second / u.coeff(v.begin()->first);
  for (const auto& [k, c] : v)
    if (c != r * u.coeff(k)) return false;
  return true;
}

void loop_certificate(Outcome& o) {
  auto make = [](Rational a) {
    auto p = parabolic("A1", {});
    return std::make_shared<InducedModule>(p, inducing_module(p, a, {Rational(1, 3)}));
  };
  auto m = make(1);
  const auto sing = singular_vectors(*m, {3, 3}, 1, jobs());
  bool only_top = sing.singular_total == 1;
  for (const auto& s : sing.spaces)
    if (!s.singular.empty()) only_top = only_top && s.shift == zero_root(1);
  o.require(only_top, "a=1 only the generator line");
  const auto cyc = cyclicity_certificate(*m, {3, 3}, 1, jobs());
  o.require(cyc.unreached == 0, "a=1 cyclic");
  auto m0 = make(0);
  const auto sing0 = singular_vectors(*m0, {3, 3}, 1, jobs());
  const Vec h1v = m0->act(Mode::cartan(0, -1), Vec(m0->generator(), 1));
  bool witness = false;
  for (const auto& s : sing0.spaces)
    if (s.shift == Root{{0}, -1})
      for (const auto& v : s.singular) witness = witness || is_multiple(v, h1v);
  o.require(witness, "a=0 witness h_{-1} v");
  int dim = 0;
  for (const auto& s : sing.spaces) dim += s.dimension;
  o.detail << "a=1: boxed dim " << dim << ", singular " << sing.singular_total << ", unreached " << cyc.unreached
           << "; a=0: singular " << sing0.singular_total << ", h_{-1}v found " << (witness ? "yes" : "no");
}

// 6. Parabolic induction certificate

void parabolic_certificate(Outcome& o) {
  auto p = parabolic("A2", {0});
  auto m = std::make_shared<InducedModule>(p, inducing_module(p, 1, {Rational(1, 3), 0}));
  const auto sing = singular_vectors(*m, {2, 2}, 1, jobs());
  bool only_top = sing.singular_total == 1;
  for (const auto& s : sing.spaces)
    if (!s.singular.empty()) only_top = only_top && s.shift == zero_root(2);
  o.require(only_top, "only the generator line");
  const auto cyc = cyclicity_certificate(*m, {2, 2}, 1, jobs());
  o.require(cyc.unreached == 0, "cyclic");
  int dim = 0;
  for (const auto& s : sing.spaces) dim += s.dimension;
  o.detail << "boxed dim " << dim << ", singular " << sing.singular_total << ", unreached " << cyc.unreached;
}

// 7. Free-field realization

void wakimoto_suite(Outcome& o) {
  long checks = 0;
  for (const char* type : {"A1", "A2"})
    for (Rational a : {Rational(0), Rational(1), Rational(-2)}) {
      auto p = parabolic(type, {});
      auto v = inducing_module(p, a, {});
      auto w = imaginary_wakimoto_functor(std::make_shared<Realization>(p), v);
      const auto rep = verify_homomorphism(*w, 2, {3, 3}, jobs());
      o.require(rep.ok() && rep.checks > 0, std::string(type) + " homomorphism a=" + a.get_str());
      checks += rep.checks;
      InducedModule m(p, v);
      o.require(character(*w, {3, 3}) == character(m, {3, 3}), std::string(type) + " character a=" + a.get_str());
    }
  auto p = parabolic("A1", {});
  auto v = inducing_module(p, 1, {Rational(1, 3)});
  auto w = imaginary_wakimoto_functor(std::make_shared<Realization>(p), v);
  InducedModule m(p, v);
  const auto match = match_to_verma(*w, m, {3, 3}, 2);
  o.require(match.equivariant && match.isomorphism, "match a=1, lambda=1/3");
  o.detail << checks << " relation checks, 0 violations required; match isomorphism "
           << (match.isomorphism ? "yes" : "no") << " over " << match.blocks.size() << " blocks";
}

// 8. Twisting

void twisting_suite(Outcome& o) {
  auto p = parabolic("A2", {0});
  const auto& g = p->algebra();
  auto v = inducing_module(p, 1, {Rational(1, 3), 0});
  auto iv = std::make_shared<InducedModule>(p, v);
  const TwistRoot alpha{g->simple_root_index(0), 0};
  Twisting t(iv, alpha, 3);
  const auto rep = verify_intertwining(t, {2, 2}, 3, 2, jobs());
  o.require(rep.samples > 0 && rep.roundtrip_ok, "roundtrip");
  o.require(rep.equivariance_ok, "equivariance");
  o.require(rep.relations_ok, "quotient relations");
  auto w = imaginary_wakimoto_functor(std::make_shared<Realization>(p), v);
  const auto ch = twisted_wakimoto_character(*w, alpha, {2, 2}, 2);
  o.require(ch.ok(), "twisted character");
  o.detail << rep.samples << " samples, " << rep.equivariance_checks << " equivariance checks, "
           << rep.relation_checks << " relation checks; character weights " << ch.dims.size();
}

// 9. PBW straightening against the bracket

void pbw_suite(Outcome& o) {
  std::vector<std::pair<std::string, ModulePtr>> modules;
  {
    auto p = parabolic("A1", {}, ImaginarySpec::LeviOnly);
    auto c = std::make_shared<ZeroActionModule>(p->algebra(), std::vector<int>{}, weight(1, 1, {Rational(1, 3)}),
                                                std::vector<int>{0});
    modules.emplace_back("A1 natural Verma", std::make_shared<InducedModule>(p, c));
  }
  {
    auto p = parabolic("A1", {});
    auto v = inducing_module(p, 1, {Rational(1, 3)});
    modules.emplace_back("A1 imaginary Verma", std::make_shared<InducedModule>(p, v));
    modules.emplace_back("A1 Wakimoto", imaginary_wakimoto_functor(std::make_shared<Realization>(p), v));
  }
  {
    auto p = parabolic("A2", {0});
    modules.emplace_back("A2 parabolic", std::make_shared<InducedModule>(p, inducing_module(p, 1, {Rational(1, 3), 0})));
  }
  {
    auto p = parabolic("A2", {});
    modules.emplace_back("A2 imaginary Verma", std::make_shared<InducedModule>(p, inducing_module(p, 1, {})));
  }
  for (std::size_t i = 0; i < modules.size(); ++i) {
    const auto& [label, m] = modules[i];
    const auto rep = sample_bracket_identity(*m, {2, 2}, 2, 200, kSeed + i);
    o.require(rep.failures == 0 && rep.checked > 0, label);
    o.detail << label << " " << rep.checked << "/" << rep.samples << (i + 1 < modules.size() ? "; " : "");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "Lie algebra axioms, A1 and A2, |n| <= 3", 30, algebra_axioms},
      {2, "quase partition suite", 10, partition_suite},
      {3, "oscillator relations and Fock characters", 60, fock_suite},
      {4, "two-sums criterion", 60, two_sums_suite},
      {5, "loop-algebra certificate, A1, D = R = 3", 300, loop_certificate},
      {6, "parabolic induction certificate, A2, D = R = 2", 600, parabolic_certificate},
      {7, "free-field realization", 300, wakimoto_suite},
      {8, "twisting intertwiner", 300, twisting_suite},
      {9, "PBW straightening, 200 triples per module", 120, pbw_suite},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail << " [over time limit]";
    }
    std::printf("criterion %d: %s  %s (%.2fs / %.0fs)  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, c.limit_s,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
