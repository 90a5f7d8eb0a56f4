#pragma once

#include <string>

#include "json.hpp"
#include "heisenberg.hpp"
#include "induced.hpp"
#include "partitions.hpp"
#include "twisting.hpp"
#include "wakimoto.hpp"

namespace ivm {

using Json = nlohmann::json;

/// "p/q", or "p" for integers.
std::string rational_to_string(const Rational& r);
/// Accepts integers and strings "p/q" or "p"; throws std::invalid_argument.
Rational parse_rational(const Json& j);

Json root_json(const Root& r);
/// Terms in key order: [{"vector": description, "coeff": "p/q"}].
Json vec_json(const WeightModule& m, const Vec& v);

Json report_json(const ValidationReport& r);
Json report_json(const LeviOrthogonalReport& r);
Json report_json(const AdmissibilityReport& r, const WeightModule& m);
Json report_json(const TwoSumsReport& r, const WeightModule& m);
Json report_json(const Certificate& c, const InducedModule& m);
Json report_json(const HomomorphismReport& r, const WakimotoModule& w);
Json report_json(const MatchReport& r, const AffineAlgebra& alg);
Json report_json(const IntertwineReport& r, const Twisting& t);
Json report_json(const TwistCharacterReport& r);

/// Realization dump: one entry "pi(x) = ..." per level-zero generator, plus c.
Json realization_json(const Realization& r);

}  // namespace ivm
