#include "semdisc/semantic_distance.hpp"

#include "semdisc/error.hpp"

#include <cmath>
#include <numbers>

namespace semdisc {

PairContext PairContext::from_table(const AssociationTable& table,
                                    std::string_view concept_a,
                                    std::string_view concept_b,
                                    ColorId color_1,
                                    ColorId color_2)
{
   if(concept_a == concept_b) fail(ErrorKind::validation, "pair context: concepts must differ");
   if(color_1 == color_2) fail(ErrorKind::validation, "pair context: colors must differ");
   const auto a = table.concept_index(concept_a);
   const auto b = table.concept_index(concept_b);
   const auto c1 = table.color_index(color_1);
   const auto c2 = table.color_index(color_2);
   return {std::string(concept_a), std::string(concept_b), color_1, color_2,
           {table.mean(a, c1), table.mean(a, c2), table.mean(b, c1), table.mean(b, c2)}};
}

PairContext PairContext::from_means(const std::array<double, 4>& means)
{
   for(double v : means)
      if(!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::validation, "pair context: mean outside [0,1]");
   return {"A", "B", ColorId{1}, ColorId{2}, means};
}

double PairContext::mean_difference() const noexcept
{
   return (means[0] + means[3]) - (means[1] + means[2]);
}

PairContext PairContext::with_colors_swapped() const
{
   return {concept_a, concept_b, color_2, color_1, {means[1], means[0], means[3], means[2]}};
}

PairContext PairContext::with_concepts_swapped() const
{
   return {concept_b, concept_a, color_1, color_2, {means[2], means[3], means[0], means[1]}};
}

double normal_cdf(double z) noexcept
{
   return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Grouped so that swapping colors or concepts gives the same bits.
double total_variance(const PairContext& ctx, const NoiseModel& model)
{
   double v[4];
   for(int i = 0; i < 4; ++i) {
      const double s = model.sigma(ctx.means[i]);
      v[i] = s * s;
   }
   return (v[0] + v[3]) + (v[1] + v[2]);
}

} // namespace

double prob_positive(const PairContext& ctx, const NoiseModel& model)
{
   const double variance = total_variance(ctx, model);
   const double diff = ctx.mean_difference();
   if(variance == 0.0) return diff > 0.0 ? 1.0 : diff < 0.0 ? 0.0 : 0.5;
   return normal_cdf(diff / std::sqrt(variance));
}

double semantic_distance(const PairContext& ctx, const NoiseModel& model)
{
   // |2 Phi(z) - 1| = erf(|z| / sqrt 2), exact under relabeling.
   const double variance = total_variance(ctx, model);
   const double diff = std::abs(ctx.mean_difference());
   if(variance == 0.0) return diff > 0.0 ? 1.0 : 0.0;
   return std::erf(diff / std::sqrt(variance) / std::numbers::sqrt2);
}

std::vector<std::pair<std::size_t, std::size_t>> unordered_pairs(std::size_t n)
{
   std::vector<std::pair<std::size_t, std::size_t>> out;
   out.reserve(n * (n - 1) / 2);
   for(std::size_t i = 0; i < n; ++i)
      for(std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
   return out;
}

SemanticDistanceReport pairwise_report(const AssociationTable& table, const NoiseModel& model)
{
   if(table.concept_count() != 2)
      fail(ErrorKind::validation,
           "semantic distance needs exactly 2 concepts (got " + std::to_string(table.concept_count())
               + "); use the assignment-distribution discriminability index for N-way palettes");
   const std::size_t n = table.color_count();
   if(n < 2) fail(ErrorKind::validation, "semantic distance needs at least 2 colors");

   SemanticDistanceReport rep{{table.concepts()[0], table.concepts()[1]},
                              table.color_ids(),
                              Matrix(n, n),
                              Matrix(n, n),
                              model.scale};
   for(const auto& [i, j] : unordered_pairs(n)) {
      const PairContext ctx{table.concepts()[0], table.concepts()[1], rep.color_ids[i], rep.color_ids[j],
                            {table.mean(0, i), table.mean(0, j), table.mean(1, i), table.mean(1, j)}};
      const double ds = semantic_distance(ctx, model);
      const double de = delta_e(table.colors()[i], table.colors()[j]);
      rep.delta_s(i, j) = rep.delta_s(j, i) = ds;
      rep.delta_e(i, j) = rep.delta_e(j, i) = de;
   }
   return rep;
}

} // namespace semdisc
