#pragma once

#include "semdisc/associations.hpp"

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semdisc {

enum class PaletteObjective { mean_delta_s, min_delta_s, min_delta_e };

std::string_view to_string(PaletteObjective o) noexcept;
PaletteObjective parse_palette_objective(std::string_view text);

/// Construction rules for a two-concept palette of 2k colors: k colors per
/// concept, graded on their own concept and weak on the other one.
struct PaletteConstraints
{
   std::size_t k_per_concept = 4;
   double min_assoc_step = 0.10;  // gap between successive own-concept ratings
   double max_cross_assoc = 0.30; // ceiling on the other concept's rating
   double min_own_assoc = 0.25;   // floor on the weakest own-concept rating
   double min_delta_e = 25.0;
   double delta_e_slack = 0.01; // grid spacing is nominal; see README
   std::vector<std::string> concept_blacklist{"orange", "blueberry"};
   PaletteObjective objective = PaletteObjective::mean_delta_s;

   /// Throws Error(validation) on negative thresholds or k == 0.
   void validate() const;
};

/// Starts from `base` and overrides any fields present in the JSON object.
PaletteConstraints parse_palette_constraints(std::string_view json_text, const PaletteConstraints& base = {});
PaletteConstraints load_palette_constraints(const std::filesystem::path& file);

struct PaletteCandidate
{
   std::array<std::string, 2> concepts;
   std::vector<ColorId> colors; // first concept's group, then the second's
   double min_delta_s = 0.0;
   double mean_delta_s = 0.0;
   double min_delta_e = 0.0;
   bool feasible = false;
   std::vector<std::string> violations;

   double objective(PaletteObjective o) const noexcept;
};

/// Every palette meeting the constraints, best objective first, ties by
/// color sequence. limit == 0 returns all. An empty result is not an error.
std::vector<PaletteCandidate> enumerate_palettes(const AssociationTable& table,
                                                 const std::array<std::string, 2>& concepts,
                                                 const PaletteConstraints& constraints,
                                                 std::size_t limit = 0,
                                                 const NoiseModel& model = {});

/// Scores and audits an explicit palette. With 2k colors the first k are
/// audited as the first concept's group and the rest as the second's.
PaletteCandidate score_palette(const AssociationTable& table,
                               const std::array<std::string, 2>& concepts,
                               std::span<const ColorId> colors,
                               const NoiseModel& model = {},
                               const PaletteConstraints& constraints = {});

/// Rescored copy of `candidate` with `remove` replaced in place by `add`.
PaletteCandidate swap_what_if(const PaletteCandidate& candidate,
                              ColorId remove,
                              ColorId add,
                              const AssociationTable& table,
                              const NoiseModel& model = {},
                              const PaletteConstraints& constraints = {});

} // namespace semdisc
