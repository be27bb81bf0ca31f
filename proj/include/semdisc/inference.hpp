#pragma once

#include "semdisc/associations.hpp"
#include "semdisc/semantic_distance.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace semdisc {

struct MappingOutcome
{
   std::vector<ColorId> colors; // colors[i] assigned to concepts[i]
   std::uint64_t count = 0;
   double p = 0.0;
};

/// Empirical distribution over injective concept -> color mappings. Outcomes
/// are sorted by count (descending), then by color sequence.
struct AssignmentDistribution
{
   std::vector<std::string> concepts;
   std::vector<ColorId> colors;
   std::vector<MappingOutcome> outcomes;
   std::uint64_t samples = 0;
   std::uint64_t seed = 0;
   std::string rng;

   /// Probability of one mapping (0 if never observed).
   double probability(std::span<const ColorId> mapping) const;
};

struct InferenceOptions
{
   std::uint64_t samples = 100000;
   std::uint64_t seed = 0;
   unsigned threads = 1; // result does not depend on this
};

/// Each sample draws every rating from Normal(mean, sigma(mean)), without
/// truncation, and solves the isolated-merit assignment on the draws.
/// Throws on samples == 0 or when the mapping space overflows 64-bit keys.
AssignmentDistribution sample_assignment_distribution(const AssociationTable& table,
                                                      const NoiseModel& model,
                                                      const InferenceOptions& options);

struct DiscriminabilityIndex
{
   double entropy = 0.0;            // nats
   double normalized_entropy = 0.0; // entropy / ln(mapping count)
   double index = 1.0;              // 1 - normalized_entropy
};

/// Normalizes by ln(n!). Throws Error(validation) for n < 2.
DiscriminabilityIndex discriminability_index(const AssignmentDistribution& dist, std::size_t n);

/// Normalizes by ln of the number of injective mappings of the
/// distribution's concepts into its colors (n! when square).
DiscriminabilityIndex discriminability_index(const AssignmentDistribution& dist);

/// ΔS for every pair of a two-concept table, estimated as |2 P - 1| from
/// 2 x 2 assignment distributions. Pair k uses a seed derived from
/// (seed, k).
SemanticDistanceReport pairwise_delta_s_via_mc(const AssociationTable& table,
                                               const NoiseModel& model,
                                               const InferenceOptions& options);

/// m! / (m - n)!, or 0 on 64-bit overflow.
std::uint64_t injective_mapping_count(std::size_t n, std::size_t m) noexcept;

} // namespace semdisc
