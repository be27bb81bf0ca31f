#include "json_io.hpp"

namespace semdisc::app {

namespace {

json ids_json(std::span<const ColorId> ids)
{
   json a = json::array();
   for(auto id : ids) a.push_back(id.value);
   return a;
}

json mapping_json(std::span<const std::string> concepts, std::span<const ColorId> colors)
{
   json m = json::object();
   for(std::size_t i = 0; i < concepts.size(); ++i) m[concepts[i]] = colors[i].value;
   return m;
}

} // namespace

json to_json(const ColorSpec& c)
{
   const auto lab = c.lab();
   const auto xyY = c.xyY();
   const auto lch = c.lch();
   const auto rgb = c.srgb();
   json j;
   j["id"] = c.id() ? json(c.id()->value) : json(nullptr);
   j["lab"] = {{"L", lab.L}, {"a", lab.a}, {"b", lab.b}};
   j["xyY"] = {{"x", xyY.x}, {"y", xyY.y}, {"Y", xyY.Y}};
   j["lch"] = {{"L", lch.L}, {"C", lch.C}, {"h", lch.h}};
   j["srgb_hex"] = rgb.hex();
   j["in_gamut"] = rgb.in_gamut;
   return j;
}

json to_json(const ExperimentSpec& e)
{
   return {{"experiment", e.number},
           {"concepts", e.concepts},
           {"colors", ids_json(e.colors)},
           {"labels", e.labels}};
}

json lower_triangle(const Matrix& m)
{
   json rows = json::array();
   for(std::size_t i = 1; i < m.rows(); ++i) {
      json row = json::array();
      for(std::size_t j = 0; j < i; ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
   }
   return rows;
}

json to_json(const SemanticDistanceReport& r)
{
   json pairs = json::array();
   for(const auto& [i, j] : unordered_pairs(r.size()))
      pairs.push_back({{"color_1", r.color_ids[i].value},
                       {"color_2", r.color_ids[j].value},
                       {"delta_s", r.delta_s(i, j)},
                       {"delta_e", r.delta_e(i, j)}});
   return {{"concepts", r.concepts},
           {"colors", ids_json(r.color_ids)},
           {"noise_scale", r.noise_scale},
           {"delta_s", lower_triangle(r.delta_s)},
           {"delta_e", lower_triangle(r.delta_e)},
           {"pairs", std::move(pairs)}};
}

json to_json(const AssignmentSolution& s)
{
   return {{"merit", std::string(to_string(s.merit_kind))},
           {"concepts", s.concepts},
           {"colors", ids_json(s.colors)},
           {"mapping", mapping_json(s.concepts, s.colors)},
           {"total_merit", s.total_merit},
           {"tie", s.tie},
           {"local_conflicts", s.local_conflicts}};
}

json to_json(const AssignmentDistribution& d, const DiscriminabilityIndex& idx)
{
   json outcomes = json::array();
   for(const auto& o : d.outcomes)
      outcomes.push_back({{"mapping", mapping_json(d.concepts, o.colors)}, {"count", o.count}, {"p", o.p}});
   return {{"samples", d.samples},
           {"seed", d.seed},
           {"rng", d.rng},
           {"concepts", d.concepts},
           {"colors", ids_json(d.colors)},
           {"outcomes", std::move(outcomes)},
           {"entropy_nats", idx.entropy},
           {"normalized_entropy", idx.normalized_entropy},
           {"index", idx.index}};
}

json to_json(const PaletteConstraints& c)
{
   return {{"k_per_concept", c.k_per_concept},
           {"min_assoc_step", c.min_assoc_step},
           {"max_cross_assoc", c.max_cross_assoc},
           {"min_own_assoc", c.min_own_assoc},
           {"min_delta_e", c.min_delta_e},
           {"delta_e_slack", c.delta_e_slack},
           {"concept_blacklist", c.concept_blacklist},
           {"objective", std::string(to_string(c.objective))}};
}

json to_json(const PaletteCandidate& p)
{
   return {{"concepts", p.concepts},
           {"colors", ids_json(p.colors)},
           {"min_delta_s", p.min_delta_s},
           {"mean_delta_s", p.mean_delta_s},
           {"min_delta_e", p.min_delta_e},
           {"feasible", p.feasible},
           {"violations", p.violations}};
}

json to_json(const RegressionSpec& s)
{
   return {{"label", s.label},
           {"kind", std::string(to_string(s.kind))},
           {"experiment", s.experiment},
           {"intercept", s.intercept},
           {"beta_perc", s.beta_perc},
           {"beta_sem", s.beta_sem},
           {"beta_assoc", s.beta_assoc ? json(*s.beta_assoc) : json(nullptr)}};
}

json error_body(std::string_view code, std::string_view message)
{
   return {{"error", {{"code", code}, {"message", message}}}};
}

} // namespace semdisc::app
