#include "semdisc/palette.hpp"

#include "semdisc/error.hpp"
#include "semdisc/semantic_distance.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace semdisc {

namespace {

// Ratings are stored as decimals; 0.5 - 0.4 must count as a 0.10 gap.
constexpr double kCompareEps = 1e-12;

std::string fmt(double v)
{
   char buf[32];
   std::snprintf(buf, sizeof buf, "%.4g", v);
   return buf;
}

std::string id_str(ColorId id)
{
   return std::to_string(id.value);
}

} // namespace

std::string_view to_string(PaletteObjective o) noexcept
{
   switch(o) {
   case PaletteObjective::mean_delta_s: return "mean_delta_s";
   case PaletteObjective::min_delta_s: return "min_delta_s";
   case PaletteObjective::min_delta_e: return "min_delta_e";
   }
   return "mean_delta_s";
}

PaletteObjective parse_palette_objective(std::string_view text)
{
   if(text == "mean_delta_s") return PaletteObjective::mean_delta_s;
   if(text == "min_delta_s") return PaletteObjective::min_delta_s;
   if(text == "min_delta_e") return PaletteObjective::min_delta_e;
   fail(ErrorKind::validation,
        "objective must be mean_delta_s, min_delta_s or min_delta_e, got '" + std::string(text) + "'");
}

void PaletteConstraints::validate() const
{
   if(k_per_concept == 0) fail(ErrorKind::validation, "k_per_concept must be at least 1");
   const std::pair<const char*, double> fields[] = {{"min_assoc_step", min_assoc_step},
                                                    {"max_cross_assoc", max_cross_assoc},
                                                    {"min_own_assoc", min_own_assoc},
                                                    {"min_delta_e", min_delta_e},
                                                    {"delta_e_slack", delta_e_slack}};
   for(const auto& [name, v] : fields)
      if(!(v >= 0.0) || !std::isfinite(v))
         fail(ErrorKind::validation, std::string(name) + " must be a finite value >= 0");
}

PaletteConstraints parse_palette_constraints(std::string_view json_text, const PaletteConstraints& base)
{
   nlohmann::json doc;
   try {
      doc = nlohmann::json::parse(json_text);
   } catch(const nlohmann::json::parse_error& e) {
      fail(ErrorKind::validation, std::string("constraints: ") + e.what());
   }
   if(!doc.is_object()) fail(ErrorKind::validation, "constraints must be a JSON object");

   PaletteConstraints c = base;
   try {
      for(const auto& [key, value] : doc.items()) {
         if(key == "k_per_concept") {
            if(!value.is_number_integer() || value.get<long long>() < 1)
               fail(ErrorKind::validation, "k_per_concept must be an integer >= 1");
            c.k_per_concept = value.get<std::size_t>();
         } else if(key == "min_assoc_step") c.min_assoc_step = value.get<double>();
         else if(key == "max_cross_assoc") c.max_cross_assoc = value.get<double>();
         else if(key == "min_own_assoc") c.min_own_assoc = value.get<double>();
         else if(key == "min_delta_e") c.min_delta_e = value.get<double>();
         else if(key == "delta_e_slack") c.delta_e_slack = value.get<double>();
         else if(key == "concept_blacklist") c.concept_blacklist = value.get<std::vector<std::string>>();
         else if(key == "objective") c.objective = parse_palette_objective(value.get<std::string>());
         else fail(ErrorKind::validation, "constraints: unknown field '" + key + "'");
      }
   } catch(const nlohmann::json::exception& e) {
      fail(ErrorKind::validation, std::string("constraints: ") + e.what());
   }
   c.validate();
   return c;
}

PaletteConstraints load_palette_constraints(const std::filesystem::path& file)
{
   std::ifstream in(file);
   if(!in) fail(ErrorKind::io, "cannot open " + file.string());
   std::ostringstream buf;
   buf << in.rdbuf();
   return parse_palette_constraints(buf.str());
}

double PaletteCandidate::objective(PaletteObjective o) const noexcept
{
   switch(o) {
   case PaletteObjective::mean_delta_s: return mean_delta_s;
   case PaletteObjective::min_delta_s: return min_delta_s;
   case PaletteObjective::min_delta_e: return min_delta_e;
   }
   return mean_delta_s;
}

namespace {

struct Metrics
{
   double min_delta_s = std::numeric_limits<double>::infinity();
   double sum_delta_s = 0.0;
   double min_delta_e = std::numeric_limits<double>::infinity();
   std::size_t pairs = 0;
};

double pair_delta_s(const AssociationTable& t, std::size_t ia, std::size_t ib, std::size_t x, std::size_t y,
                    const NoiseModel& model)
{
   PairContext ctx;
   ctx.means = {t.mean(ia, x), t.mean(ia, y), t.mean(ib, x), t.mean(ib, y)};
   return semantic_distance(ctx, model);
}

// Pairs visited in position order (p < q); enumeration sums in the same
// order so its objective matches score_palette bit for bit.
template <class DeltaS, class DeltaE>
Metrics measure(std::span<const std::size_t> idx, DeltaS&& ds, DeltaE&& de)
{
   Metrics m;
   for(std::size_t p = 0; p < idx.size(); ++p)
      for(std::size_t q = p + 1; q < idx.size(); ++q) {
         const double s = ds(idx[p], idx[q]);
         m.min_delta_s = std::min(m.min_delta_s, s);
         m.sum_delta_s += s;
         m.min_delta_e = std::min(m.min_delta_e, de(idx[p], idx[q]));
         ++m.pairs;
      }
   return m;
}

void check_pair(const AssociationTable& table, const std::array<std::string, 2>& concepts)
{
   if(concepts[0] == concepts[1]) fail(ErrorKind::validation, "palette needs two different concepts");
   table.concept_index(concepts[0]);
   table.concept_index(concepts[1]);
}

std::vector<std::string> audit(const AssociationTable& table,
                               const std::array<std::string, 2>& concepts,
                               std::span<const std::size_t> idx,
                               const PaletteConstraints& c)
{
   std::vector<std::string> v;
   for(const auto& name : concepts)
      if(std::find(c.concept_blacklist.begin(), c.concept_blacklist.end(), name) != c.concept_blacklist.end())
         v.push_back("concept '" + name + "' is blacklisted");

   const std::size_t k = c.k_per_concept;
   const auto ids = table.color_ids();
   if(idx.size() != 2 * k) {
      v.push_back("palette has " + std::to_string(idx.size()) + " colors, expected " + std::to_string(2 * k) + " ("
                  + std::to_string(k) + " per concept)");
   } else {
      const std::size_t ci[2] = {table.concept_index(concepts[0]), table.concept_index(concepts[1])};
      for(std::size_t g = 0; g < 2; ++g) {
         const std::size_t own = ci[g], other = ci[1 - g];
         std::vector<std::size_t> group(idx.begin() + static_cast<std::ptrdiff_t>(g * k),
                                        idx.begin() + static_cast<std::ptrdiff_t>((g + 1) * k));
         for(auto x : group) {
            if(table.mean(other, x) > c.max_cross_assoc + kCompareEps)
               v.push_back("color " + id_str(ids[x]) + ": " + concepts[1 - g] + " association "
                           + fmt(table.mean(other, x)) + " > max_cross_assoc " + fmt(c.max_cross_assoc));
            if(table.mean(own, x) < c.min_own_assoc - kCompareEps)
               v.push_back("color " + id_str(ids[x]) + ": " + concepts[g] + " association "
                           + fmt(table.mean(own, x)) + " < min_own_assoc " + fmt(c.min_own_assoc));
         }
         std::stable_sort(group.begin(), group.end(),
                          [&](auto a, auto b) { return table.mean(own, a) > table.mean(own, b); });
         for(std::size_t p = 0; p + 1 < group.size(); ++p) {
            const double gap = table.mean(own, group[p]) - table.mean(own, group[p + 1]);
            if(gap < c.min_assoc_step - kCompareEps)
               v.push_back(concepts[g] + " group: colors " + id_str(ids[group[p]]) + " and "
                           + id_str(ids[group[p + 1]]) + " differ by " + fmt(gap) + " < min_assoc_step "
                           + fmt(c.min_assoc_step));
         }
      }
   }
   const double floor = c.min_delta_e - c.delta_e_slack;
   for(std::size_t p = 0; p < idx.size(); ++p)
      for(std::size_t q = p + 1; q < idx.size(); ++q) {
         const double d = delta_e(table.colors()[idx[p]], table.colors()[idx[q]]);
         if(d < floor)
            v.push_back("colors " + id_str(ids[idx[p]]) + " and " + id_str(ids[idx[q]]) + ": delta_e " + fmt(d)
                        + " < min_delta_e " + fmt(c.min_delta_e));
      }
   return v;
}

PaletteCandidate score_indices(const AssociationTable& table,
                               const std::array<std::string, 2>& concepts,
                               std::span<const std::size_t> idx,
                               const NoiseModel& model,
                               const PaletteConstraints& c)
{
   const std::size_t ia = table.concept_index(concepts[0]);
   const std::size_t ib = table.concept_index(concepts[1]);
   const auto m = measure(
       idx, [&](auto x, auto y) { return pair_delta_s(table, ia, ib, x, y, model); },
       [&](auto x, auto y) { return delta_e(table.colors()[x], table.colors()[y]); });

   PaletteCandidate out;
   out.concepts = concepts;
   const auto ids = table.color_ids();
   for(auto x : idx) out.colors.push_back(ids[x]);
   out.min_delta_s = m.min_delta_s;
   out.mean_delta_s = m.sum_delta_s / static_cast<double>(m.pairs);
   out.min_delta_e = m.min_delta_e;
   out.violations = audit(table, concepts, idx, c);
   out.feasible = out.violations.empty();
   return out;
}

// All k-subsets of the pool (own-descending order) with successive gaps
// >= step and pairwise ΔE >= floor.
void collect_groups(const AssociationTable& table,
                    std::size_t own,
                    const std::vector<std::size_t>& pool,
                    const std::vector<double>& de,
                    std::size_t n_colors,
                    const PaletteConstraints& c,
                    std::vector<std::vector<std::size_t>>& out)
{
   const std::size_t k = c.k_per_concept;
   const double floor = c.min_delta_e - c.delta_e_slack;
   std::vector<std::size_t> chosen;
   chosen.reserve(k);

   auto dfs = [&](auto&& self, std::size_t start) -> void {
      if(chosen.size() == k) {
         out.push_back(chosen);
         return;
      }
      for(std::size_t p = start; p + (k - chosen.size()) <= pool.size(); ++p) {
         const std::size_t x = pool[p];
         if(!chosen.empty()) {
            const double gap = table.mean(own, chosen.back()) - table.mean(own, x);
            if(gap < c.min_assoc_step - kCompareEps) continue;
         }
         bool ok = true;
         for(auto y : chosen)
            if(de[x * n_colors + y] < floor) {
               ok = false;
               break;
            }
         if(!ok) continue;
         chosen.push_back(x);
         self(self, p + 1);
         chosen.pop_back();
      }
   };
   dfs(dfs, 0);
}

struct Ranked
{
   double objective;
   std::vector<ColorId> colors;
   std::vector<std::size_t> idx;
};

// "a ranks before b"
bool ranks_before(const Ranked& a, const Ranked& b)
{
   if(a.objective != b.objective) return a.objective > b.objective;
   return a.colors < b.colors;
}

} // namespace

std::vector<PaletteCandidate> enumerate_palettes(const AssociationTable& table,
                                                 const std::array<std::string, 2>& concepts,
                                                 const PaletteConstraints& constraints,
                                                 std::size_t limit,
                                                 const NoiseModel& model)
{
   constraints.validate();
   for(const auto& name : concepts)
      if(std::find(constraints.concept_blacklist.begin(), constraints.concept_blacklist.end(), name)
         != constraints.concept_blacklist.end())
         fail(ErrorKind::validation, "concept '" + name + "' is blacklisted");
   check_pair(table, concepts);

   const std::size_t n = table.color_count();
   const std::size_t ci[2] = {table.concept_index(concepts[0]), table.concept_index(concepts[1])};
   std::vector<double> ds(n * n, 0.0), de(n * n, 0.0);
   for(std::size_t x = 0; x < n; ++x)
      for(std::size_t y = x + 1; y < n; ++y) {
         ds[x * n + y] = ds[y * n + x] = pair_delta_s(table, ci[0], ci[1], x, y, model);
         de[x * n + y] = de[y * n + x] = delta_e(table.colors()[x], table.colors()[y]);
      }

   std::vector<std::vector<std::size_t>> groups[2];
   const auto ids = table.color_ids();
   for(std::size_t g = 0; g < 2; ++g) {
      const std::size_t own = ci[g], other = ci[1 - g];
      std::vector<std::size_t> pool;
      for(std::size_t x = 0; x < n; ++x)
         if(table.mean(other, x) <= constraints.max_cross_assoc + kCompareEps
            && table.mean(own, x) >= constraints.min_own_assoc - kCompareEps)
            pool.push_back(x);
      std::sort(pool.begin(), pool.end(), [&](auto a, auto b) {
         const double ma = table.mean(own, a), mb = table.mean(own, b);
         return ma != mb ? ma > mb : ids[a] < ids[b];
      });
      collect_groups(table, own, pool, de, n, constraints, groups[g]);
   }

   const double floor = constraints.min_delta_e - constraints.delta_e_slack;
   auto worse_on_top = [](const Ranked& a, const Ranked& b) { return ranks_before(a, b); };
   std::priority_queue<Ranked, std::vector<Ranked>, decltype(worse_on_top)> heap(worse_on_top);
   std::vector<Ranked> all;
   std::vector<std::size_t> idx(2 * constraints.k_per_concept);

   for(const auto& ga : groups[0]) {
      for(const auto& gb : groups[1]) {
         bool ok = true;
         for(auto x : ga) {
            for(auto y : gb)
               if(x == y || de[x * n + y] < floor) {
                  ok = false;
                  break;
               }
            if(!ok) break;
         }
         if(!ok) continue;
         std::copy(ga.begin(), ga.end(), idx.begin());
         std::copy(gb.begin(), gb.end(), idx.begin() + static_cast<std::ptrdiff_t>(ga.size()));
         const auto m = measure(
             idx, [&](auto x, auto y) { return ds[x * n + y]; }, [&](auto x, auto y) { return de[x * n + y]; });
         double obj = m.sum_delta_s / static_cast<double>(m.pairs);
         if(constraints.objective == PaletteObjective::min_delta_s) obj = m.min_delta_s;
         if(constraints.objective == PaletteObjective::min_delta_e) obj = m.min_delta_e;

         Ranked r{obj, {}, idx};
         for(auto x : idx) r.colors.push_back(ids[x]);
         if(limit == 0) {
            all.push_back(std::move(r));
         } else if(heap.size() < limit) {
            heap.push(std::move(r));
         } else if(ranks_before(r, heap.top())) {
            heap.pop();
            heap.push(std::move(r));
         }
      }
   }
   while(!heap.empty()) {
      all.push_back(heap.top());
      heap.pop();
   }
   std::sort(all.begin(), all.end(), ranks_before);

   std::vector<PaletteCandidate> out;
   out.reserve(all.size());
   for(const auto& r : all) out.push_back(score_indices(table, concepts, r.idx, model, constraints));
   return out;
}

PaletteCandidate score_palette(const AssociationTable& table,
                               const std::array<std::string, 2>& concepts,
                               std::span<const ColorId> colors,
                               const NoiseModel& model,
                               const PaletteConstraints& constraints)
{
   check_pair(table, concepts);
   if(colors.size() < 2) fail(ErrorKind::validation, "palette needs at least 2 colors");
   std::set<ColorId> seen;
   std::vector<std::size_t> idx;
   for(auto id : colors) {
      if(!seen.insert(id).second) fail(ErrorKind::validation, "duplicate color id " + id_str(id) + " in palette");
      idx.push_back(table.color_index(id));
   }
   return score_indices(table, concepts, idx, model, constraints);
}

PaletteCandidate swap_what_if(const PaletteCandidate& candidate,
                              ColorId remove,
                              ColorId add,
                              const AssociationTable& table,
                              const NoiseModel& model,
                              const PaletteConstraints& constraints)
{
   if(remove == add) fail(ErrorKind::validation, "swap: remove and add are the same color " + id_str(add));
   auto colors = candidate.colors;
   const auto it = std::find(colors.begin(), colors.end(), remove);
   if(it == colors.end()) fail(ErrorKind::not_found, "swap: color " + id_str(remove) + " is not in the palette");
   if(std::find(colors.begin(), colors.end(), add) != colors.end())
      fail(ErrorKind::validation, "swap: color " + id_str(add) + " is already in the palette");
   table.color_index(add);
   *it = add;
   return score_palette(table, candidate.concepts, colors, model, constraints);
}

} // namespace semdisc
