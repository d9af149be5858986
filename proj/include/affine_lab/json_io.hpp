#pragma once

#include <json.hpp>

#include "affine_lab/conjugacy.hpp"
#include "affine_lab/flow.hpp"
#include "affine_lab/lift.hpp"

namespace affine_lab {

// {"re": .., "im": ..}, plus "exact": "<literal>" on the exact track.
nlohmann::json to_json(const ComplexValue& z);
// {"lower": number|null, "upper": number|null, "text": "(a, b)"}.
nlohmann::json to_json(const MaximalInterval& interval);
nlohmann::json to_json(const Witness& w);
// {"mode", "status", "witness", "reason", "used_tolerance", "search_bound"}.
nlohmann::json to_json(const ConjugacyVerdict& v);
// {"samples", "t_grid", "max_deviation", "domain_agreements", "branch_ok", "boundary_ok", "seed"}.
nlohmann::json to_json(const VerificationReport& r);

}  // namespace affine_lab
