#include "service.hpp"

#include "semdisc/error.hpp"

#include <algorithm>
#include <cmath>

namespace semdisc::app {

namespace {

void check_fields(const json& req, std::string_view op, std::initializer_list<std::string_view> allowed)
{
   if(!req.is_object()) fail(ErrorKind::validation, std::string(op) + ": request body must be a JSON object");
   for(const auto& [key, value] : req.items())
      if(std::find(allowed.begin(), allowed.end(), key) == allowed.end())
         fail(ErrorKind::validation, std::string(op) + ": unknown field '" + key + "'");
}

std::vector<std::string> string_list(const json& v, std::string_view key)
{
   if(!v.is_array()) fail(ErrorKind::validation, std::string(key) + " must be an array of strings");
   std::vector<std::string> out;
   for(const auto& e : v) {
      if(!e.is_string()) fail(ErrorKind::validation, std::string(key) + " must be an array of strings");
      out.push_back(e.get<std::string>());
   }
   return out;
}

ColorId color_id(const json& v, std::string_view key)
{
   if(!v.is_number_integer()) fail(ErrorKind::validation, std::string(key) + " must be an integer color id");
   return ColorId{v.get<int>()};
}

std::vector<ColorId> id_list(const json& v, std::string_view key)
{
   if(!v.is_array()) fail(ErrorKind::validation, std::string(key) + " must be an array of integer color ids");
   std::vector<ColorId> out;
   for(const auto& e : v) out.push_back(color_id(e, key));
   return out;
}

std::uint64_t unsigned_field(const json& req, std::string_view key, std::uint64_t fallback)
{
   const std::string k(key);
   if(!req.contains(k)) return fallback;
   const auto& v = req[k];
   if(!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(ErrorKind::validation, k + " must be a non-negative integer");
   return v.get<std::uint64_t>();
}

NoiseModel noise_model(const json& req)
{
   NoiseModel m;
   if(req.contains("noise_scale")) {
      const auto& v = req["noise_scale"];
      if(!v.is_number() || !std::isfinite(v.get<double>()) || v.get<double>() < 0.0)
         fail(ErrorKind::validation, "noise_scale must be a finite number >= 0");
      m.scale = v.get<double>();
   }
   return m;
}

PaletteConstraints constraints_field(const json& req, const PaletteConstraints& base)
{
   if(!req.contains("constraints")) return base;
   const auto& c = req["constraints"];
   if(!c.is_object()) fail(ErrorKind::validation, "constraints must be a JSON object");
   return parse_palette_constraints(c.dump(), base);
}

std::array<std::string, 2> as_pair(const Selection& s)
{
   return {s.concepts.at(0), s.concepts.at(1)};
}

} // namespace

Service::Service(Dataset dataset, std::vector<RegressionSpec> models, PaletteConstraints defaults, unsigned threads)
    : dataset_(std::move(dataset))
    , models_(std::move(models))
    , defaults_(std::move(defaults))
    , threads_(std::max(1u, threads))
{}

Service Service::load(const std::filesystem::path& dir, unsigned threads)
{
   auto ds = load_dataset(dir);
   std::vector<RegressionSpec> models;
   if(std::filesystem::exists(dir / kRegressionFile)) {
      models = load_regression_models(dir / kRegressionFile);
      ds.files.push_back(dir / kRegressionFile);
   }
   PaletteConstraints defaults;
   if(std::filesystem::exists(dir / kPaletteDefaultsFile)) {
      defaults = load_palette_constraints(dir / kPaletteDefaultsFile);
      ds.files.push_back(dir / kPaletteDefaultsFile);
   }
   return Service(std::move(ds), std::move(models), std::move(defaults), threads);
}

Selection Service::select(const json& req, bool require_two) const
{
   Selection s;
   if(req.contains("experiment")) {
      const auto& v = req["experiment"];
      if(!v.is_number_integer()) fail(ErrorKind::validation, "experiment must be an integer");
      const auto& e = dataset_.experiment(v.get<int>());
      s.experiment = e.number;
      s.concepts.assign(e.concepts.begin(), e.concepts.end());
      s.colors = e.colors;
   }
   if(req.contains("concepts")) s.concepts = string_list(req["concepts"], "concepts");
   if(req.contains("colors")) s.colors = id_list(req["colors"], "colors");
   if(s.concepts.empty()) fail(ErrorKind::validation, "concepts is required (or experiment)");
   if(s.colors.empty()) fail(ErrorKind::validation, "colors is required (or experiment)");
   if(require_two && s.concepts.size() != 2)
      fail(ErrorKind::validation, "exactly 2 concepts are required, got " + std::to_string(s.concepts.size()));
   for(const auto& c : s.concepts) dataset_.table.concept_index(c);
   for(auto id : s.colors) dataset_.table.color_index(id);
   return s;
}

AssociationTable Service::table_for(const Selection& s) const
{
   return subset(dataset_.table, s.concepts, s.colors);
}

json Service::colors() const
{
   json list = json::array();
   for(const auto& c : dataset_.table.colors()) list.push_back(to_json(c));
   return {{"dataset", dataset_.id}, {"count", list.size()}, {"colors", std::move(list)}};
}

json Service::concepts() const
{
   json experiments = json::array();
   for(const auto& e : dataset_.experiments) experiments.push_back(to_json(e));
   json models = json::array();
   for(const auto& m : models_) models.push_back(m.label);
   return {{"dataset", dataset_.id},
           {"concepts", dataset_.table.concepts()},
           {"concept_blacklist", defaults_.concept_blacklist},
           {"experiments", std::move(experiments)},
           {"models", std::move(models)}};
}

SemanticDistanceReport Service::distance_report(const json& req) const
{
   check_fields(req, "semantic-distance", {"experiment", "concepts", "colors", "noise_scale"});
   const auto sel = select(req, true);
   std::vector<ColorId> sorted = sel.colors;
   std::sort(sorted.begin(), sorted.end());
   if(std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorKind::validation, "colors must be distinct");
   return pairwise_report(table_for(sel), noise_model(req));
}

json Service::semantic_distance(const json& req) const
{
   return to_json(distance_report(req));
}

json Service::assign(const json& req) const
{
   check_fields(req, "assign", {"experiment", "concepts", "colors", "merit"});
   const auto sel = select(req, false);
   MeritKind kind = MeritKind::isolated;
   if(req.contains("merit")) {
      if(!req["merit"].is_string()) fail(ErrorKind::validation, "merit must be a string");
      kind = parse_merit_kind(req["merit"].get<std::string>());
   }
   return to_json(solve_nxn(make_merit(table_for(sel), kind)));
}

json Service::discriminability(const json& req) const
{
   check_fields(req, "discriminability", {"experiment", "concepts", "colors", "samples", "seed", "noise_scale"});
   const auto sel = select(req, false);
   if(sel.concepts.size() < 2) fail(ErrorKind::validation, "discriminability needs at least 2 concepts");
   InferenceOptions opt;
   opt.samples = unsigned_field(req, "samples", opt.samples);
   opt.seed = unsigned_field(req, "seed", 0);
   opt.threads = threads_;
   const auto dist = sample_assignment_distribution(table_for(sel), noise_model(req), opt);
   return to_json(dist, discriminability_index(dist));
}

PredictionResult Service::predictions(const json& req) const
{
   check_fields(req, "predict", {"experiment", "concepts", "colors", "models", "include_ties", "noise_scale"});
   PredictionResult r;
   r.selection = select(req, true);

   std::vector<std::string> labels;
   if(req.contains("models")) {
      const auto& m = req["models"];
      labels = m.is_string() ? std::vector<std::string>{m.get<std::string>()} : string_list(m, "models");
      if(labels.empty()) fail(ErrorKind::validation, "models must name at least one model");
   } else {
      const int e = r.selection.experiment.value_or(2);
      labels = {"Acc " + std::to_string(e) + ".2", "RT " + std::to_string(e) + ".2"};
   }
   for(const auto& label : labels) {
      const auto& spec = find_model(models_, label);
      auto& slot = spec.kind == RegressionKind::logistic_accuracy ? r.accuracy_model : r.rt_model;
      if(slot) fail(ErrorKind::validation, "models: more than one " + std::string(to_string(spec.kind)) + " model");
      slot = spec;
   }
   if(req.contains("include_ties")) {
      if(!req["include_ties"].is_boolean()) fail(ErrorKind::validation, "include_ties must be a boolean");
      r.include_ties = req["include_ties"].get<bool>();
   }

   r.rows = prediction_rows(build_stimuli(table_for(r.selection), noise_model(req)), r.include_ties);
   if(r.accuracy_model) r.accuracy = predict_accuracy(r.rows, *r.accuracy_model);
   if(r.rt_model) r.rt_ms = predict_rt(r.rows, *r.rt_model);
   return r;
}

json Service::predict_json(const PredictionResult& r) const
{
   json rows = json::array();
   for(std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto& s = r.rows[i];
      rows.push_back({{"target", s.target},
                      {"color_1", s.color_1.value},
                      {"color_2", s.color_2.value},
                      {"correct_color", s.correct_color.value},
                      {"delta_s", s.delta_s},
                      {"delta_e", s.delta_e},
                      {"assoc", s.assoc},
                      {"z_delta_s", s.z_delta_s},
                      {"z_delta_e", s.z_delta_e},
                      {"z_assoc", s.z_assoc},
                      {"tie", s.tie},
                      {"pred_accuracy", r.accuracy.empty() ? json(nullptr) : json(r.accuracy[i])},
                      {"pred_rt_ms", r.rt_ms.empty() ? json(nullptr) : json(r.rt_ms[i])}});
   }
   json out;
   out["experiment"] = r.selection.experiment ? json(*r.selection.experiment) : json(nullptr);
   out["concepts"] = r.selection.concepts;
   json colors = json::array();
   for(auto id : r.selection.colors) colors.push_back(id.value);
   out["colors"] = std::move(colors);
   out["accuracy_model"] = r.accuracy_model ? to_json(*r.accuracy_model) : json(nullptr);
   out["rt_model"] = r.rt_model ? to_json(*r.rt_model) : json(nullptr);
   out["zscore_scope"] = kZscoreScope;
   out["include_ties"] = r.include_ties;
   out["count"] = r.rows.size();
   out["rows"] = std::move(rows);
   return out;
}

json Service::predict(const json& req) const
{
   return predict_json(predictions(req));
}

json Service::optimize(const json& req) const
{
   check_fields(req, "optimize", {"experiment", "concepts", "constraints", "limit", "noise_scale"});
   std::vector<std::string> concepts;
   if(req.contains("experiment")) {
      if(!req["experiment"].is_number_integer()) fail(ErrorKind::validation, "experiment must be an integer");
      const auto& e = dataset_.experiment(req["experiment"].get<int>());
      concepts.assign(e.concepts.begin(), e.concepts.end());
   }
   if(req.contains("concepts")) concepts = string_list(req["concepts"], "concepts");
   if(concepts.size() != 2)
      fail(ErrorKind::validation, "optimize needs exactly 2 concepts, got " + std::to_string(concepts.size()));
   const auto constraints = constraints_field(req, defaults_);
   const auto limit = unsigned_field(req, "limit", 10);
   const auto found = enumerate_palettes(dataset_.table, {concepts[0], concepts[1]}, constraints, limit, noise_model(req));
   json list = json::array();
   for(const auto& c : found) list.push_back(to_json(c));
   return {{"concepts", concepts},
           {"constraints", to_json(constraints)},
           {"limit", limit},
           {"count", list.size()},
           {"candidates", std::move(list)}};
}

json Service::palette_swap(const json& req) const
{
   check_fields(req, "palette/swap",
                {"experiment", "concepts", "colors", "remove", "add", "constraints", "noise_scale"});
   const auto sel = select(req, true);
   if(!req.contains("remove") || !req.contains("add"))
      fail(ErrorKind::validation, "palette/swap needs 'remove' and 'add'");
   const auto constraints = constraints_field(req, defaults_);
   const auto model = noise_model(req);
   const auto before = score_palette(dataset_.table, as_pair(sel), sel.colors, model, constraints);
   return to_json(swap_what_if(before, color_id(req["remove"], "remove"), color_id(req["add"], "add"),
                               dataset_.table, model, constraints));
}

} // namespace semdisc::app
