#pragma once

#include "glvol/exact_scalar.hpp"
#include "glvol/exterior.hpp"
#include "glvol/fiber_integration.hpp"
#include "glvol/lie_cohomology.hpp"
#include "glvol/numint.hpp"

#include <json.hpp>

namespace glvol {

// All serialization uses ordered JSON with deterministic key and term order,
// so identical inputs produce byte-identical output.
using ordered_json = nlohmann::ordered_json;

// {"terms": [{"pi_deg": k, "re": "p/q", "im": "p/q"}, ...]}, ascending degree.
ordered_json scalar_json(const ExactScalar& s);
ExactScalar scalar_from_json(const ordered_json& j);

// [{"blade": [[r, c], ...], "coeff": <scalar>}, ...], ascending blade mask.
ordered_json form_json(const Form& f);

ordered_json betti_json(const BettiTable& table);

// Adds the target modulus and the relative error alongside the raw estimate.
ordered_json estimate_json(const IntegrationEstimate& est, double expected_modulus);

ordered_json trace_json(const RecursionTrace& step);

}  // namespace glvol
