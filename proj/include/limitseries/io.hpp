#ifndef LIMITSERIES_IO_HPP
#define LIMITSERIES_IO_HPP

// Text and JSON formats. Every parser throws ParseError on malformed input;
// staircase parsers additionally reject non-monotone heights.

#include <string>

#include "json.hpp"

#include "limitseries/enriques.hpp"
#include "limitseries/horace.hpp"
#include "limitseries/interp.hpp"
#include "limitseries/localring.hpp"
#include "limitseries/staircase.hpp"

namespace limitseries {

using Json = nlohmann::ordered_json;

// Staircases. Text: one "index:height" line per column of a plane staircase,
// indices sorted; '#' starts a comment. JSON: {"dim":2,"heights":[[0,3],[1,2]]},
// each entry a base index followed by its height.
Staircase parse_staircase_text(const std::string& text);
std::string format_staircase_text(const Staircase& e);
Staircase staircase_from_json(const Json& j);
Json to_json(const Staircase& e);
/// "3,2,1" as column heights of a plane staircase; "" is the empty staircase.
Staircase parse_heights_list(const std::string& s);
std::string format_heights_list(const Staircase& e);
/// A staircase given as an array of column heights or as the JSON object form.
Staircase staircase_from_any(const Json& j);

// Ring elements: [[a_1, ..., a_d], t, coefficient] per term, coefficients
// as symmetric residues.
Json to_json(const RingContext& ctx, const Poly& p);
Poly poly_from_json(const RingContext& ctx, const Json& j);
Json to_json(const MonomialSpace& m);

// Plan files.
struct PlanFile {
  SpecializationPlan plan;
  std::optional<DivisorSystem> system;  ///< when on_divisor or off_divisor is given
  LineSystemModel model;                ///< from the system, or given directly
  bool allow_boundary = false;
};
PlanFile plan_from_json(const Json& j);
Json to_json(const PlanFile& p);

Json to_json(const std::vector<Finding>& findings);
Json to_json(const std::vector<LevelVerdict>& verdicts);
Json to_json(const StaircaseTuple& es);
Json to_json(const ResidualCertificate& c);
Json to_json(const InclusionResult& r);

/// {k, m, d, plans, base_case, identities, seed, prime, passed}.
Json to_json(const NagataCertificate& c);
Json to_json(const NagataTable& t);

Json to_json(const EnriquesDiagram& d);
EnriquesDiagram enriques_from_json(const Json& j);

}  // namespace limitseries

#endif  // LIMITSERIES_IO_HPP
