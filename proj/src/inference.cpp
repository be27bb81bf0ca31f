#include "semdisc/inference.hpp"

#include "semdisc/assignment.hpp"
#include "semdisc/error.hpp"
#include "semdisc/rng.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <thread>
#include <unordered_map>

namespace semdisc {

namespace {

// Dense counts while the mapping space is small, a hash map beyond that.
class Tally
{
 public:
   static constexpr std::uint64_t dense_limit = 1 << 16;

   explicit Tally(std::uint64_t mappings)
   {
      if(mappings <= dense_limit) dense_.assign(mappings, 0);
   }

   void add(std::uint64_t key, std::uint64_t n = 1)
   {
      if(!dense_.empty()) dense_[key] += n;
      else sparse_[key] += n;
   }

   template <class F>
   void for_each(F&& f) const
   {
      for(std::size_t k = 0; k < dense_.size(); ++k)
         if(dense_[k]) f(static_cast<std::uint64_t>(k), dense_[k]);
      for(const auto& [k, c] : sparse_) f(k, c);
   }

 private:
   std::vector<std::uint64_t> dense_;
   std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
};

// Rank of an injective column sequence among all m!/(m-n)! sequences:
// position i contributes (index among still-unused columns) * (m-i-1)!/(m-n)!.
struct MappingCodec
{
   std::size_t n;
   std::size_t m;
   std::vector<std::uint64_t> weight; // weight[i] = (m-1-i)! / (m-n)!

   MappingCodec(std::size_t rows, std::size_t cols)
       : n(rows)
       , m(cols)
       , weight(rows)
   {
      std::uint64_t w = 1;
      for(std::size_t i = rows; i-- > 0;) {
         weight[i] = w;
         w *= static_cast<std::uint64_t>(cols - i);
      }
   }

   std::uint64_t encode(std::span<const std::size_t> columns) const noexcept
   {
      std::uint64_t used = 0; // m <= 64 guaranteed by the overflow check
      std::uint64_t key = 0;
      for(std::size_t i = 0; i < n; ++i) {
         const std::uint64_t below = used & ((std::uint64_t{1} << columns[i]) - 1);
         const auto digit = static_cast<std::uint64_t>(columns[i]) - std::popcount(below);
         key += digit * weight[i];
         used |= std::uint64_t{1} << columns[i];
      }
      return key;
   }

   std::vector<std::size_t> decode(std::uint64_t key) const
   {
      std::vector<std::size_t> free(m);
      for(std::size_t c = 0; c < m; ++c) free[c] = c;
      std::vector<std::size_t> cols(n);
      for(std::size_t i = 0; i < n; ++i) {
         const auto digit = static_cast<std::size_t>(key / weight[i]);
         key %= weight[i];
         cols[i] = free[digit];
         free.erase(free.begin() + static_cast<std::ptrdiff_t>(digit));
      }
      return cols;
   }
};

// Draws are consumed in (concept name, color id) order rather than table
// order, so a relabeled or permuted table sees the same value per cell.
std::vector<std::size_t> canonical_cell_order(const AssociationTable& table)
{
   const std::size_t rows = table.concept_count();
   const std::size_t cols = table.color_count();
   std::vector<std::size_t> rorder(rows), corder(cols);
   for(std::size_t i = 0; i < rows; ++i) rorder[i] = i;
   for(std::size_t j = 0; j < cols; ++j) corder[j] = j;
   const auto ids = table.color_ids();
   std::sort(rorder.begin(), rorder.end(), [&](auto a, auto b) { return table.concepts()[a] < table.concepts()[b]; });
   std::sort(corder.begin(), corder.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
   std::vector<std::size_t> order;
   order.reserve(rows * cols);
   for(auto i : rorder)
      for(auto j : corder) order.push_back(i * cols + j);
   return order;
}

void run_samples(const AssociationTable& table,
                 const std::vector<std::size_t>& order,
                 const std::vector<double>& sd,
                 const MappingCodec& codec,
                 std::uint64_t seed,
                 std::uint64_t begin,
                 std::uint64_t end,
                 Tally& tally)
{
   const std::size_t rows = table.concept_count();
   const std::size_t cols = table.color_count();
   const auto mean = table.mean().data();
   std::vector<double> draw(rows * cols);
   std::vector<std::size_t> columns(rows);
   if(rows == 2 && cols == 2) {
      // Keys: identity = 0, swapped = 1.
      std::uint64_t swapped = 0;
      for(std::uint64_t s = begin; s < end; ++s) {
         SampleStream rng(seed, s);
         for(const std::size_t k : order) draw[k] = rng.normal(mean[k], sd[k]);
         swapped += (draw[0] + draw[3]) < (draw[1] + draw[2]);
      }
      tally.add(0, (end - begin) - swapped);
      tally.add(1, swapped);
      return;
   }
   detail::MaxAssignmentSolver solver;
   for(std::uint64_t s = begin; s < end; ++s) {
      SampleStream rng(seed, s);
      for(const std::size_t k : order) draw[k] = rng.normal(mean[k], sd[k]);
      solver.solve_into(draw, rows, cols, columns);
      tally.add(codec.encode(columns));
   }
}

} // namespace

std::uint64_t injective_mapping_count(std::size_t n, std::size_t m) noexcept
{
   if(n > m) return 0;
   std::uint64_t count = 1;
   for(std::size_t i = 0; i < n; ++i) {
      const auto f = static_cast<std::uint64_t>(m - i);
      if(count > UINT64_MAX / f) return 0;
      count *= f;
   }
   return count;
}

double AssignmentDistribution::probability(std::span<const ColorId> mapping) const
{
   for(const auto& o : outcomes)
      if(std::equal(o.colors.begin(), o.colors.end(), mapping.begin(), mapping.end())) return o.p;
   return 0.0;
}

AssignmentDistribution sample_assignment_distribution(const AssociationTable& table,
                                                      const NoiseModel& model,
                                                      const InferenceOptions& options)
{
   if(options.samples == 0) fail(ErrorKind::validation, "samples must be at least 1");
   const std::size_t rows = table.concept_count();
   const std::size_t cols = table.color_count();
   if(rows == 0) fail(ErrorKind::validation, "inference: table has no concepts");
   if(rows > cols)
      fail(ErrorKind::validation, "inference: more concepts than colors");
   if(cols > 64 || injective_mapping_count(rows, cols) == 0)
      fail(ErrorKind::validation,
           "inference: " + std::to_string(rows) + " concepts x " + std::to_string(cols)
               + " colors has too many mappings to tally; use a smaller palette (<= 8 recommended)");

   std::vector<double> sd;
   sd.reserve(rows * cols);
   for(double m : table.mean().data()) sd.push_back(model.sigma(m));

   const MappingCodec codec(rows, cols);
   const auto order = canonical_cell_order(table);
   const auto workers = static_cast<std::uint64_t>(
       std::clamp<unsigned>(options.threads, 1u, static_cast<unsigned>(std::min<std::uint64_t>(options.samples, 256))));
   const std::uint64_t mappings = injective_mapping_count(rows, cols);
   std::vector<Tally> tallies(workers, Tally(mappings));
   {
      std::vector<std::jthread> pool;
      for(std::uint64_t w = 0; w < workers; ++w) {
         const std::uint64_t begin = options.samples * w / workers;
         const std::uint64_t end = options.samples * (w + 1) / workers;
         if(w + 1 == workers) {
            run_samples(table, order, sd, codec, options.seed, begin, end, tallies[w]);
         } else {
            pool.emplace_back([&, w, begin, end] {
               run_samples(table, order, sd, codec, options.seed, begin, end, tallies[w]);
            });
         }
      }
   }
   Tally total(mappings);
   for(const auto& t : tallies) t.for_each([&](std::uint64_t k, std::uint64_t c) { total.add(k, c); });

   AssignmentDistribution dist;
   dist.concepts = table.concepts();
   dist.colors = table.color_ids();
   dist.samples = options.samples;
   dist.seed = options.seed;
   dist.rng = SampleStream::algorithm;

   std::vector<std::pair<std::vector<std::size_t>, std::uint64_t>> entries;
   total.for_each([&](std::uint64_t k, std::uint64_t c) { entries.emplace_back(codec.decode(k), c); });
   std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
      return x.second != y.second ? x.second > y.second : x.first < y.first;
   });
   for(auto& [cols_used, count] : entries) {
      MappingOutcome o;
      for(auto c : cols_used) o.colors.push_back(dist.colors[c]);
      o.count = count;
      o.p = static_cast<double>(count) / static_cast<double>(options.samples);
      dist.outcomes.push_back(std::move(o));
   }
   return dist;
}

namespace {

DiscriminabilityIndex index_with_log_count(const AssignmentDistribution& dist, double log_count)
{
   DiscriminabilityIndex out;
   for(const auto& o : dist.outcomes)
      if(o.p > 0.0) out.entropy -= o.p * std::log(o.p);
   out.entropy = std::max(out.entropy, 0.0);
   out.normalized_entropy = std::clamp(out.entropy / log_count, 0.0, 1.0);
   out.index = 1.0 - out.normalized_entropy;
   return out;
}

} // namespace

DiscriminabilityIndex discriminability_index(const AssignmentDistribution& dist, std::size_t n)
{
   if(n < 2) fail(ErrorKind::validation, "discriminability index needs n >= 2");
   return index_with_log_count(dist, std::lgamma(static_cast<double>(n) + 1.0));
}

DiscriminabilityIndex discriminability_index(const AssignmentDistribution& dist)
{
   const std::size_t n = dist.concepts.size();
   const std::size_t m = dist.colors.size();
   if(n < 2) fail(ErrorKind::validation, "discriminability index needs at least 2 concepts");
   const double log_count = std::lgamma(static_cast<double>(m) + 1.0)
                            - std::lgamma(static_cast<double>(m - n) + 1.0);
   return index_with_log_count(dist, log_count);
}

SemanticDistanceReport pairwise_delta_s_via_mc(const AssociationTable& table,
                                               const NoiseModel& model,
                                               const InferenceOptions& options)
{
   if(table.concept_count() != 2)
      fail(ErrorKind::validation, "pairwise ΔS needs exactly 2 concepts");
   const std::size_t n = table.color_count();
   if(n < 2) fail(ErrorKind::validation, "pairwise ΔS needs at least 2 colors");
   if(options.samples == 0) fail(ErrorKind::validation, "samples must be at least 1");

   const auto ids = table.color_ids();
   SemanticDistanceReport rep{{table.concepts()[0], table.concepts()[1]}, ids, Matrix(n, n), Matrix(n, n), model.scale};
   const auto pairs = unordered_pairs(n);
   for(std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      const std::array<ColorId, 2> pair_ids{ids[i], ids[j]};
      const auto sub = subset(table, table.concepts(), pair_ids);
      InferenceOptions opt = options;
      opt.seed = splitmix64(options.seed + k);
      const auto dist = sample_assignment_distribution(sub, model, opt);
      const double p = dist.probability(pair_ids);
      rep.delta_s(i, j) = rep.delta_s(j, i) = std::abs(2.0 * p - 1.0);
      rep.delta_e(i, j) = rep.delta_e(j, i) = delta_e(table.colors()[i], table.colors()[j]);
   }
   return rep;
}

} // namespace semdisc
