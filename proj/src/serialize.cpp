#include "serialize.hpp"

#include <stdexcept>

namespace ivm {

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected a rational as an integer or a \"p/q\" string, got " + j.dump());
  const auto s = j.get<std::string>();
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational \"" + s + "\"");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  r.canonicalize();
  return r;
}

Json root_json(const Root& r) { return root_to_string(r); }

Json vec_json(const WeightModule& m, const Vec& v) {
  Json out = Json::array();
  for (const auto& [k, c] : v) out.push_back({{"vector", m.describe(k)}, {"coeff", rational_to_string(c)}});
  return out;
}

Json report_json(const ValidationReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(root_json(x));
  return {{"verdict", verdict_name(r.verdict)},
          {"violated", r.violated},
          {"witnesses", w},
          {"real_sum_closed", r.real_sum_closed},
          {"closure_box", r.closure_box}};
}

Json report_json(const LeviOrthogonalReport& r) {
  return {{"sum_is_whole", r.sum_is_whole},
          {"perp_commutes_with_levi", r.perp_commutes_with_levi},
          {"intersection_is_central", r.intersection_is_central},
          {"levels", r.levels.size()}};
}

Json report_json(const AdmissibilityReport& r, const WeightModule& m) {
  Json j{{"verdict", admissible_name(r.verdict)},
         {"level", r.level},
         {"direction", r.direction},
         {"cyclic_submodules", r.cyclic_submodules}};
  if (r.witness) j["witness"] = {vec_json(m, r.witness->first), vec_json(m, r.witness->second)};
  return j;
}

Json report_json(const TwoSumsReport& r, const WeightModule& m) {
  return {{"N", r.n}, {"verdict", r.verdict}, {"sum_plus", vec_json(m, r.sum_plus)}, {"sum_minus", vec_json(m, r.sum_minus)}};
}

Json report_json(const Certificate& c, const InducedModule& m) {
  Json j{{"kind", c.kind == Certificate::Kind::SingularList ? "singular_vectors" : "cyclicity"},
         {"box", {{"D", c.box.depth}, {"R", c.box.height}}},
         {"raising_modes", c.raising}};
  if (c.kind == Certificate::Kind::SingularList) {
    Json spaces = Json::array();
    int dim = 0;
    for (const auto& s : c.spaces) {
      dim += s.dimension;
      if (s.singular.empty()) continue;
      Json sing = Json::array();
      for (const auto& v : s.singular) sing.push_back(vec_json(m, v));
      spaces.push_back({{"shift", root_json(s.shift)}, {"dimension", s.dimension}, {"singular", sing}});
    }
    j["weight_spaces"] = c.spaces.size();
    j["boxed_dimension"] = dim;
    j["singular_total"] = c.singular_total;
    j["singular"] = spaces;
  } else {
    Json reach = Json::array();
    for (const auto& r : c.reach) {
      Json e{{"vector", m.describe(r.key)}};
      if (r.word) {
        Json w = Json::array();
        for (const auto& x : *r.word) w.push_back(m.algebra().mode_name(x));
        e["word"] = w;
      } else {
        e["word"] = nullptr;
      }
      reach.push_back(e);
    }
    j["reach"] = reach;
    j["unreached"] = c.unreached;
    j["cyclic"] = c.unreached == 0;
  }
  return j;
}

Json report_json(const HomomorphismReport& r, const WakimotoModule& w) {
  Json v = Json::array();
  const auto& alg = w.algebra();
  for (std::size_t i = 0; i < r.violations.size() && i < 8; ++i) {
    const auto& x = r.violations[i];
    v.push_back({{"x", alg.mode_name(x.x)}, {"y", alg.mode_name(x.y)}, {"vector", w.describe(x.key)}, {"defect", vec_json(w, x.defect)}});
  }
  return {{"checks", r.checks}, {"violations", r.violations.size()}, {"ok", r.ok()}, {"witnesses", v}};
}

Json report_json(const MatchReport& r, const AffineAlgebra& alg) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) blocks.push_back({{"shift", root_json(b.shift)}, {"dimension", b.dimension}, {"rank", b.rank}});
  Json j{{"equivariant", r.equivariant}, {"isomorphism", r.isomorphism}, {"blocks", blocks}};
  j["rank_drop"] = r.rank_drop ? Json(root_json(*r.rank_drop)) : Json(nullptr);
  j["equivariance_failure"] = r.equivariance_failure ? Json(alg.mode_name(r.equivariance_failure->first)) : Json(nullptr);
  return j;
}

Json report_json(const IntertwineReport& r, const Twisting& t) {
  Json rt = Json::array();
  for (const auto& [k, ok] : r.roundtrip) rt.push_back({{"sample", t.source().describe(k)}, {"ok", ok}});
  Json w = Json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"check", x.check}, {"mode", x.mode}, {"sample", t.source().describe(x.sample)}, {"defect_terms", x.defect.size()}});
  return {{"samples", r.samples},
          {"roundtrip_checks", r.roundtrip_checks},
          {"equivariance_checks", r.equivariance_checks},
          {"relation_checks", r.relation_checks},
          {"roundtrip_ok", r.roundtrip_ok},
          {"equivariance_ok", r.equivariance_ok},
          {"relations_ok", r.relations_ok},
          {"ok", r.ok()},
          {"roundtrip", rt},
          {"witnesses", w}};
}

Json report_json(const TwistCharacterReport& r) {
  Json dims = Json::array();
  for (const auto& [mu, d] : r.dims) dims.push_back({{"shift", root_json(mu)}, {"twisted_wakimoto", d.first}, {"wakimoto_of_twisted", d.second}});
  return {{"equal", r.equal}, {"injective", r.injective}, {"stable", r.stable}, {"ok", r.ok()}, {"dims", dims}};
}

Json realization_json(const Realization& r) {
  const auto& alg = r.algebra();
  Json out = Json::array();
  auto entry = [&](const Mode& m) { out.push_back("pi(" + alg.mode_name(m) + ") = " + r.field_to_string(m)); };
  for (int i = 0; i < alg.rank(); ++i) {
    const int e = alg.simple_root_index(i);
    entry(Mode::real(e, 0));
    entry(Mode::real(alg.negative_of(e), 0));
  }
  for (int i = 0; i < alg.rank(); ++i) entry(Mode::cartan(i, 0));
  out.push_back("pi(c) = a");
  return out;
}

}  // namespace ivm
