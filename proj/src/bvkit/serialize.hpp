#pragma once

#include <json.hpp>

#include "brst.hpp"
#include "bv_solver.hpp"
#include "problem.hpp"

namespace bvkit {

using Json = nlohmann::ordered_json;

// Polynomials and graded elements are stored in their printed form, which the
// parsers read back exactly.
Json to_json(const TateResolution& r);
TateResolution resolution_from_json(const Json& j);

Json to_json(const MasterSolution& s);
MasterSolution solution_from_json(const Json& j);

Json to_json(const CohomologyReport& r);
CohomologyReport report_from_json(const Json& j);

Json to_json(const VerifyReport& v);
Json to_json(const GaugeWord& w);
Json to_json(const ProblemSpec& p);
Json to_json(const AcyclicityReport& a);
Json to_json(const SymmetryPresentation& p);

}  // namespace bvkit
