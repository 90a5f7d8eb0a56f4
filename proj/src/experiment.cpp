#include "experiment.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ivm {

namespace {

const std::set<std::string> kTopKeys{"schema", "algebra", "parabolic", "module", "box",
                                     "twist", "partitions", "expect", "tasks"};

void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw std::invalid_argument("unknown key \"" + k + "\" in " + where);
}

int get_int(const Json& obj, const std::string& key, int fallback, int lo = 0, int hi = 1000) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument("\"" + key + "\" must be an integer");
  const int x = v.get<int>();
  if (x < lo || x > hi)
    throw std::invalid_argument("\"" + key + "\" must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

std::string get_string(const Json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) throw std::invalid_argument("\"" + key + "\" must be a string");
  return obj.at(key).get<std::string>();
}

SignTable get_signs(const Json& obj, const std::string& key) {
  SignTable out;
  if (!obj.contains(key)) return out;
  if (!obj.at(key).is_array()) throw std::invalid_argument("\"" + key + "\" must be an array of +1/-1");
  for (const auto& s : obj.at(key)) {
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      throw std::invalid_argument("\"" + key + "\" entries must be +1 or -1");
    out.push_back(s.get<int>());
  }
  return out;
}

struct Config {
  std::string type;
  std::vector<int> omega;  // 0-based
  ImaginarySpec imaginary = ImaginarySpec::Full;
  SignTable phi;
  Lambda lambda;
  std::string heis = "fock";  // fock, zero, fock_pair
  TriangularSpec tri;
  int K = 2, D = 2, R = 2, N0 = 2, mode_bound = 1, extra = 1, samples = 200, n_max = 20;
  bool has_twist = false;
  RootVec twist_root;
  int twist_level = 0;
  Json partitions = Json::array();
  std::map<std::string, std::string> expect;
  std::vector<std::string> tasks;
};

Config parse(const Json& spec) {
  check_keys(spec, "spec", kTopKeys);
  if (!spec.contains("schema") || spec.at("schema") != kSchemaVersion)
    throw std::invalid_argument("\"schema\" must be " + std::to_string(kSchemaVersion));
  Config c;
  if (!spec.contains("algebra")) throw std::invalid_argument("missing \"algebra\"");
  check_keys(spec.at("algebra"), "algebra", {"type"});
  c.type = get_string(spec.at("algebra"), "type", "");
  const auto ct = CartanType::parse(c.type);
  const int rank = ct.rank;

  if (spec.contains("parabolic")) {
    const auto& p = spec.at("parabolic");
    check_keys(p, "parabolic", {"omega", "imaginary", "phi"});
    if (p.contains("omega")) {
      for (const auto& i : p.at("omega")) {
        if (!i.is_number_integer() || i.get<int>() < 1 || i.get<int>() > rank)
          throw std::invalid_argument("omega entries are simple root numbers 1.." + std::to_string(rank));
        c.omega.push_back(i.get<int>() - 1);
      }
    }
    const auto im = get_string(p, "imaginary", "full");
    if (im == "full") c.imaginary = ImaginarySpec::Full;
    else if (im == "levi") c.imaginary = ImaginarySpec::LeviOnly;
    else throw std::invalid_argument("\"imaginary\" must be \"full\" or \"levi\"");
    c.phi = get_signs(p, "phi");
  }

  c.lambda.h.assign(static_cast<std::size_t>(rank), 0);
  if (spec.contains("module")) {
    const auto& m = spec.at("module");
    check_keys(m, "module", {"heisenberg", "triangular", "lambda"});
    c.heis = get_string(m, "heisenberg", "fock");
    if (c.heis != "fock" && c.heis != "zero" && c.heis != "fock_pair")
      throw std::invalid_argument("module \"heisenberg\" must be \"fock\", \"zero\" or \"fock_pair\"");
    if (m.contains("lambda")) {
      const auto& l = m.at("lambda");
      check_keys(l, "lambda", {"h", "c", "d"});
      if (l.contains("h")) {
        if (!l.at("h").is_array() || l.at("h").size() != static_cast<std::size_t>(rank))
          throw std::invalid_argument("lambda \"h\" needs one value per simple coroot");
        for (int i = 0; i < rank; ++i) c.lambda.h[static_cast<std::size_t>(i)] = parse_rational(l.at("h")[static_cast<std::size_t>(i)]);
      }
      if (l.contains("c")) c.lambda.c = parse_rational(l.at("c"));
      if (l.contains("d")) c.lambda.d = parse_rational(l.at("d"));
    }
    if (m.contains("triangular")) {
      const auto& t = m.at("triangular");
      check_keys(t, "triangular", {"kind", "phi", "psi", "tail"});
      const auto kind = get_string(t, "kind", "standard");
      if (kind == "standard") c.tri = TriangularSpec::standard();
      else if (kind == "opposite") c.tri = TriangularSpec::opposite();
      else if (kind == "phi") c.tri = TriangularSpec::by_level(get_signs(t, "phi"));
      else if (kind == "psi") {
        std::map<std::pair<int, int>, int> psi;
        for (const auto& e : t.value("psi", Json::array())) {
          if (!e.is_array() || e.size() != 3) throw std::invalid_argument("psi entries are [level, direction, sign]");
          psi[{e[0].get<int>(), e[1].get<int>()}] = e[2].get<int>();
        }
        c.tri = TriangularSpec::per_oscillator(std::move(psi));
      } else {
        throw std::invalid_argument("triangular \"kind\" must be standard, opposite, phi or psi");
      }
      if (t.contains("tail")) c.tri.tail = get_int(t, "tail", 1, -1, 1);
    }
  }

  if (spec.contains("box")) {
    const auto& b = spec.at("box");
    check_keys(b, "box", {"K", "D", "R", "N0", "mode_bound", "extra", "samples", "N_max"});
    c.K = get_int(b, "K", c.K, 0, 8);
    c.D = get_int(b, "D", c.D, 0, 8);
    c.R = get_int(b, "R", c.R, 0, 16);
    c.N0 = get_int(b, "N0", c.N0, 0, 8);
    c.mode_bound = get_int(b, "mode_bound", c.mode_bound, 0, 6);
    c.extra = get_int(b, "extra", c.extra, 0, 4);
    c.samples = get_int(b, "samples", c.samples, 0, 100000);
    c.n_max = get_int(b, "N_max", c.n_max, 1, 200);
  }

  if (spec.contains("twist")) {
    const auto& t = spec.at("twist");
    check_keys(t, "twist", {"root", "level"});
    c.has_twist = true;
    if (!t.contains("root") || !t.at("root").is_array() || t.at("root").size() != static_cast<std::size_t>(rank))
      throw std::invalid_argument("twist \"root\" needs one simple-root coefficient per simple root");
    c.twist_root = t.at("root").get<RootVec>();
    c.twist_level = get_int(t, "level", 0, 0, 8);
  }

  if (spec.contains("partitions")) {
    if (!spec.at("partitions").is_array()) throw std::invalid_argument("\"partitions\" must be an array");
    c.partitions = spec.at("partitions");
  } else {
    c.partitions = Json::array({Json{{"kind", "standard"}}, Json{{"kind", "natural"}}});
  }

  if (spec.contains("expect")) {
    const auto& e = spec.at("expect");
    if (e.is_string()) {
      c.expect["certify"] = e.get<std::string>();
    } else {
      check_keys(e, "expect", {"certify", "wakimoto", "heisenberg"});
      for (const auto& [k, v] : e.items()) c.expect[k] = v.get<std::string>();
    }
    static const std::set<std::string> known{"irreducible", "reducible", "isomorphism", "admissible", "not_admissible"};
    for (const auto& [k, v] : c.expect)
      if (!known.count(v)) throw std::invalid_argument("unknown expectation \"" + v + "\"");
  }

  if (spec.contains("tasks")) {
    for (const auto& t : spec.at("tasks")) {
      const auto name = t.get<std::string>();
      if (std::find(task_names().begin(), task_names().end(), name) == task_names().end())
        throw std::invalid_argument("unknown task \"" + name + "\"");
      c.tasks.push_back(name);
    }
  }
  return c;
}

// ---------------------------------------------------------------- module assembly

struct Built {
  std::shared_ptr<Parabolic> p;
  ModulePtr heis;  // Heisenberg factor on G(l)^perp, if any
  ModulePtr v;     // inducing module
  std::shared_ptr<InducedModule> iv;
  std::vector<int> perp;
};

Built build(const Config& c) {
  Built b;
  b.p = std::make_shared<Parabolic>(AffineAlgebra(CartanType::parse(c.type)), c.omega, c.imaginary, c.phi);
  const auto& g = b.p->algebra();
  const int rank = g->rank();
  if (c.imaginary == ImaginarySpec::Full)
    for (int i = b.p->levi_directions(); i < rank; ++i) b.perp.push_back(i);

  ModulePtr levi;
  if (!c.omega.empty()) {
    auto gen = std::make_shared<ZeroActionModule>(g, std::vector<int>{}, c.lambda, std::vector<int>{0});
    levi = std::make_shared<InducedModule>(std::make_shared<LeviBorel>(b.p), gen);
  }
  if (!b.perp.empty()) {
    Lambda hl = c.lambda;
    if (levi) hl.h.assign(static_cast<std::size_t>(rank), 0);
    if (c.heis == "fock") {
      b.heis = std::make_shared<FockModule>(g, b.perp, c.tri, hl);
    } else if (c.heis == "zero") {
      b.heis = std::make_shared<ZeroActionModule>(g, b.perp, hl, std::vector<int>{0});
    } else {
      Lambda bare = hl;
      bare.h.assign(static_cast<std::size_t>(rank), 0);
      auto l = std::make_shared<FockModule>(g, b.perp, c.tri, hl);
      auto lm = std::make_shared<FockModule>(g, b.perp, TriangularSpec::opposite(), bare);
      b.heis = std::make_shared<TensorModule>(l, lm, TensorModule::Routing::Diagonal);
    }
  }
  if (levi && b.heis) b.v = std::make_shared<TensorModule>(levi, b.heis, TensorModule::Routing::Levi);
  else if (levi) b.v = levi;
  else if (b.heis) b.v = b.heis;
  else b.v = std::make_shared<ZeroActionModule>(g, std::vector<int>{}, c.lambda, std::vector<int>{0});
  b.iv = std::make_shared<InducedModule>(b.p, b.v);
  return b;
}

// ---------------------------------------------------------------- tasks

struct Outcome {
  Json result;
  bool failed = false;
  bool inconclusive = false;
};

std::string elem_string(const AffineAlgebra& g, const AlgElement& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : x) {
    os << (first ? "" : " + ") << "(" << rational_to_string(c) << ") " << g.mode_name(m);
    first = false;
  }
  return os.str();
}

Outcome task_algebra(const Config& c) {
  const AffineAlgebra g(CartanType::parse(c.type));
  Json roots = Json::array();
  int real = 0, imag = 0;
  for (const auto& r : g.roots_in_box(c.K)) {
    roots.push_back(root_json(r));
    (g.classify(r) == RootClass::Real ? real : imag)++;
  }
  std::vector<Mode> zero, gens;
  for (int i = 0; i < g.rank(); ++i) {
    const int e = g.simple_root_index(i);
    for (int m : {0, 1}) {
      auto& dst = m == 0 ? zero : gens;
      dst.push_back(Mode::real(e, m));
      dst.push_back(Mode::real(g.negative_of(e), m));
      dst.push_back(Mode::cartan(i, m));
    }
  }
  for (const auto& x : zero) gens.push_back(x);
  Json table = Json::array();
  for (const auto& x : zero)
    for (const auto& y : gens) {
      const auto br = g.bracket(x, y);
      if (!br.empty()) table.push_back({{"x", g.mode_name(x)}, {"y", g.mode_name(y)}, {"bracket", elem_string(g, br)}});
    }
  return {Json{{"type", g.type().name()},
               {"rank", g.rank()},
               {"finite_roots", g.root_count()},
               {"K", c.K},
               {"root_count", roots.size()},
               {"real_roots", real},
               {"imaginary_roots", imag},
               {"roots", roots},
               {"brackets", table}}};
}

Outcome task_partition(const Config& c) {
  const AffineAlgebra g(CartanType::parse(c.type));
  Outcome out;
  Json list = Json::array();
  for (const auto& ps : c.partitions) {
    check_keys(ps, "partition", {"kind", "phi", "roots", "expect_valid"});
    const auto kind = get_string(ps, "kind", "standard");
    QuasePartition q;
    if (kind == "standard") q = standard_partition(g, c.K);
    else if (kind == "natural") q = natural_partition(g, c.K);
    else if (kind == "phi") q = phi_partition(g, get_signs(ps, "phi"), c.K);
    else if (kind == "extensional") {
      std::set<Root> roots;
      for (const auto& r : ps.value("roots", Json::array())) {
        auto v = r.get<std::vector<int>>();
        if (v.size() != static_cast<std::size_t>(g.rank() + 1))
          throw std::invalid_argument("extensional roots are [simple-root coefficients..., level]");
        roots.insert(Root{RootVec(v.begin(), v.end() - 1), v.back()});
      }
      q = extensional_partition(std::move(roots), c.K);
    } else {
      throw std::invalid_argument("partition \"kind\" must be standard, natural, phi or extensional");
    }
    const auto rep = validate_quase_partition(g, q);
    Json e = report_json(rep);
    e["kind"] = kind;
    if (rep.verdict == Verdict::Inconclusive) out.inconclusive = true;
    if (ps.contains("expect_valid")) {
      const bool want = ps.at("expect_valid").get<bool>();
      e["expect_valid"] = want;
      if (rep.verdict != Verdict::Inconclusive && (rep.verdict == Verdict::Valid) != want) out.failed = true;
    }
    list.push_back(e);
  }
  out.result["partitions"] = list;
  Parabolic p(g, c.omega, c.imaginary, c.phi);
  out.result["levi_orthogonal"] = report_json(levi_orthogonal(p, c.K));
  return out;
}

Outcome task_heisenberg(const Config& c, const Built& b) {
  Outcome out;
  if (!b.heis) throw std::invalid_argument("heisenberg task needs a Heisenberg factor (imaginary \"full\" and G(l)^perp nonempty)");
  const auto& h = *b.heis;
  const Box box{c.D, c.R};
  out.result["relations_ok"] = verify_relations(h, box, c.mode_bound);
  if (!out.result["relations_ok"].get<bool>()) out.failed = true;
  Json adm = Json::array();
  for (int k = 1; k <= std::max(1, c.mode_bound); ++k) {
    const auto rep = check_admissible(h, k, box);
    if (rep.verdict == AdmissibleVerdict::Inconclusive) out.inconclusive = true;
    adm.push_back(report_json(rep, h));
  }
  out.result["admissibility"] = adm;
  HeisenbergBasis hb(b.p->algebra());
  const int dir = b.perp.front();
  auto osc = [&](int k) { return hb.oscillator(dir, k); };
  std::vector<Vec> w{Vec(h.generator(), 1)};
  std::vector<int> offs{0};
  if (c.heis == "fock_pair") {
    w.push_back(h.act(osc(-1), w.front()));
    offs.push_back(1);
  }
  Json sums = Json::array();
  bool all_true = true;
  for (int n = offs.back() + 1; n <= c.n_max; ++n) {
    const auto rep = heis_two_sums(h, osc, w, offs, n);
    all_true = all_true && rep.verdict;
    sums.push_back({{"N", n}, {"verdict", rep.verdict}});
  }
  out.result["two_sums"] = sums;
  out.result["two_sums_all_true"] = all_true;
  if (c.expect.count("heisenberg")) {
    const bool want = c.expect.at("heisenberg") == "admissible";
    if (all_true != want) out.failed = true;
  }
  return out;
}

Outcome task_certify(const Config& c, const Built& b, int jobs) {
  Outcome out;
  const Box box{c.D, c.R};
  const auto sv = singular_vectors(*b.iv, box, c.extra, jobs);
  const auto cy = cyclicity_certificate(*b.iv, box, c.extra, jobs);
  out.result["singular_vectors"] = report_json(sv, *b.iv);
  out.result["cyclicity"] = report_json(cy, *b.iv);
  const bool only_generator = sv.singular_total == 1;
  out.result["only_generator_singular"] = only_generator;
  if (c.expect.count("certify")) {
    const auto& want = c.expect.at("certify");
    out.result["expect"] = want;
    if (want == "irreducible" && (!only_generator || cy.unreached != 0)) out.failed = true;
    if (want == "reducible" && only_generator) out.failed = true;
  }
  return out;
}

Outcome task_wakimoto(const Config& c, const Built& b, int jobs) {
  Outcome out;
  auto r = std::make_shared<Realization>(b.p);
  auto w = imaginary_wakimoto_functor(r, b.v);
  const Box box{c.D, c.R};
  out.result["realization"] = realization_json(*r);
  const auto hom = verify_homomorphism(*w, c.mode_bound, box, jobs);
  out.result["homomorphism"] = report_json(hom, *w);
  const bool chars = character(*w, box) == character(*b.iv, box);
  out.result["character_match"] = chars;
  const auto match = match_to_verma(*w, *b.iv, box, c.mode_bound);
  out.result["match_to_verma"] = report_json(match, *b.p->algebra());
  if (!hom.ok() || !chars || !match.equivariant) out.failed = true;
  if (c.expect.count("wakimoto") && c.expect.at("wakimoto") == "isomorphism" && !match.isomorphism) out.failed = true;
  return out;
}

Outcome task_twist(const Config& c, const Built& b, int jobs) {
  Outcome out;
  if (!c.has_twist) throw std::invalid_argument("twist task needs a \"twist\" section");
  const auto& g = *b.p->algebra();
  const auto idx = g.root_index(c.twist_root);
  if (!idx) throw std::invalid_argument("twist root is not a finite root");
  const TwistRoot alpha{*idx, c.twist_level};
  Twisting t(b.iv, alpha, c.N0);
  const Box box{c.D, c.R};
  const auto rep = verify_intertwining(t, box, c.N0, c.mode_bound, jobs);
  out.result["intertwining"] = report_json(rep, t);
  if (!rep.ok()) out.failed = true;
  if (c.imaginary == ImaginarySpec::Full && c.twist_level == 0) {
    auto w = imaginary_wakimoto_functor(std::make_shared<Realization>(b.p), b.v);
    const auto ch = twisted_wakimoto_character(*w, alpha, box, c.N0);
    out.result["twisted_wakimoto_character"] = report_json(ch);
    if (!ch.equal) out.failed = true;
    if (!ch.injective || !ch.stable) out.inconclusive = true;
  }
  return out;
}

Outcome task_pbw(const Config& c, const Built& b, std::uint64_t seed) {
  Outcome out;
  const auto rep = sample_bracket_identity(*b.iv, {c.D, c.R}, c.mode_bound, c.samples, seed);
  out.result = {{"samples", rep.samples}, {"checked", rep.checked}, {"skipped", rep.skipped}, {"failures", rep.failures}, {"seed", seed}};
  if (rep.failures) out.failed = true;
  return out;
}

Json echo(const Config& c) {
  Json omega = Json::array();
  for (int i : c.omega) omega.push_back(i + 1);
  Json h = Json::array();
  for (const auto& x : c.lambda.h) h.push_back(rational_to_string(x));
  return {{"algebra", c.type},
          {"omega", omega},
          {"imaginary", c.imaginary == ImaginarySpec::Full ? "full" : "levi"},
          {"heisenberg", c.heis},
          {"lambda", {{"h", h}, {"c", rational_to_string(c.lambda.c)}, {"d", rational_to_string(c.lambda.d)}}},
          {"box", {{"K", c.K}, {"D", c.D}, {"R", c.R}, {"N0", c.N0}, {"mode_bound", c.mode_bound}, {"extra", c.extra}}}};
}

ExperimentResult invalid(const std::string& msg) {
  return {Json{{"schema", kSchemaVersion}, {"error", msg}, {"exit_code", kExitInvalid}}, kExitInvalid};
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"algebra", "partition", "heisenberg", "certify", "wakimoto", "twist", "pbw"};
  return names;
}

ExperimentResult run_experiment(const Json& spec, const RunOptions& opt) {
  try {
    Config c = parse(spec);
    if (opt.task) {
      if (std::find(task_names().begin(), task_names().end(), *opt.task) == task_names().end())
        throw std::invalid_argument("unknown task \"" + *opt.task + "\"");
      c.tasks = {*opt.task};
    }
    Json results = Json::object();
    bool failed = false, inconclusive = false;
    std::optional<Built> built;
    auto need = [&]() -> const Built& {
      if (!built) built = build(c);
      return *built;
    };
    for (const auto& t : c.tasks) {
      Outcome o;
      if (t == "algebra") o = task_algebra(c);
      else if (t == "partition") o = task_partition(c);
      else if (t == "heisenberg") o = task_heisenberg(c, need());
      else if (t == "certify") o = task_certify(c, need(), opt.jobs);
      else if (t == "wakimoto") o = task_wakimoto(c, need(), opt.jobs);
      else if (t == "twist") o = task_twist(c, need(), opt.jobs);
      else if (t == "pbw") o = task_pbw(c, need(), opt.seed);
      o.result["status"] = o.failed ? "failed" : o.inconclusive ? "inconclusive" : "ok";
      results[t] = o.result;
      failed = failed || o.failed;
      inconclusive = inconclusive || o.inconclusive;
    }
    const int code = failed ? kExitFailed : inconclusive ? kExitInconclusive : kExitOk;
    return {Json{{"schema", kSchemaVersion},
                 {"input", echo(c)},
                 {"results", results},
                 {"status", failed ? "failed" : inconclusive ? "inconclusive" : "ok"},
                 {"exit_code", code}},
            code};
  } catch (const Json::exception& e) {
    return invalid(std::string("spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return invalid(e.what());
  }
}

ExperimentResult run_experiment_text(const std::string& text, const RunOptions& opt) {
  Json spec;
  try {
    spec = Json::parse(text);
  } catch (const Json::parse_error& e) {
    return invalid(std::string("parse error: ") + e.what());
  }
  return run_experiment(spec, opt);
}

}  // namespace ivm
