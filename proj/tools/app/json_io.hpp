#pragma once

#include "semdisc/assignment.hpp"
#include "semdisc/dataset.hpp"
#include "semdisc/inference.hpp"
#include "semdisc/interpretability.hpp"
#include "semdisc/palette.hpp"
#include "semdisc/semantic_distance.hpp"

#include <json.hpp>

namespace semdisc::app {

using json = nlohmann::ordered_json;

json to_json(const ColorSpec& c);
json to_json(const ExperimentSpec& e);
/// Matrices as their lower triangle without the diagonal: [[d10], [d20, d21], ...].
json to_json(const SemanticDistanceReport& r);
json to_json(const AssignmentSolution& s);
json to_json(const AssignmentDistribution& d, const DiscriminabilityIndex& idx);
json to_json(const PaletteConstraints& c);
json to_json(const PaletteCandidate& p);
json to_json(const RegressionSpec& s);

json lower_triangle(const Matrix& m);

/// `{"error": {"code": ..., "message": ...}}`
json error_body(std::string_view code, std::string_view message);

} // namespace semdisc::app
