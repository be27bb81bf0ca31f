#pragma once

#include "semdisc/associations.hpp"

#include <array>
#include <string>
#include <vector>

namespace semdisc {

/// Two concepts and two colors with their mean associations, wired as
///   means[0] = (a, color_1)   means[1] = (a, color_2)
///   means[2] = (b, color_1)   means[3] = (b, color_2)
/// so that "a -> color_1, b -> color_2" is chosen when
/// means[0] + means[3] > means[1] + means[2].
struct PairContext
{
   std::string concept_a;
   std::string concept_b;
   ColorId color_1;
   ColorId color_2;
   std::array<double, 4> means{};

   static PairContext from_table(const AssociationTable& table,
                                 std::string_view concept_a,
                                 std::string_view concept_b,
                                 ColorId color_1,
                                 ColorId color_2);
   /// Anonymous context ("A"/"B", colors 1/2) for toy inputs.
   static PairContext from_means(const std::array<double, 4>& means);

   /// (means[0] + means[3]) - (means[1] + means[2])
   double mean_difference() const noexcept;

   PairContext with_colors_swapped() const;
   PairContext with_concepts_swapped() const;
};

/// Standard normal CDF via erfc; absolute error well below 1e-9.
double normal_cdf(double z) noexcept;

/// Probability that a random observer picks a -> color_1, b -> color_2.
/// With zero total variance: 1, 0 or 0.5 by the sign of the mean difference.
double prob_positive(const PairContext& ctx, const NoiseModel& model = {});

/// |P - (1 - P)|, in [0,1].
double semantic_distance(const PairContext& ctx, const NoiseModel& model = {});

/// Pairwise ΔS and ΔE over the colors of a two-concept table. Diagonals are
/// stored as 0 and are not meaningful (see `diagonal_valid`).
struct SemanticDistanceReport
{
   std::array<std::string, 2> concepts;
   std::vector<ColorId> color_ids;
   Matrix delta_s;
   Matrix delta_e;
   double noise_scale = 1.4;

   static constexpr bool diagonal_valid = false;

   std::size_t size() const noexcept { return color_ids.size(); }
   std::size_t pair_count() const noexcept { return size() * (size() - 1) / 2; }
};

/// Throws Error(validation) unless the table has exactly 2 concepts and at
/// least 2 colors; N-way palettes go through the assignment inference module.
SemanticDistanceReport pairwise_report(const AssociationTable& table, const NoiseModel& model = {});

/// (i, j), i < j, in row-major order over n items.
std::vector<std::pair<std::size_t, std::size_t>> unordered_pairs(std::size_t n);

} // namespace semdisc
