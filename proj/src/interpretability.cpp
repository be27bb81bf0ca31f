#include "semdisc/interpretability.hpp"

#include "semdisc/assignment.hpp"
#include "semdisc/error.hpp"
#include "semdisc/semantic_distance.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace semdisc {

std::string_view to_string(RegressionKind kind) noexcept
{
   return kind == RegressionKind::logistic_accuracy ? "logistic_accuracy" : "linear_rt";
}

RegressionKind parse_regression_kind(std::string_view text)
{
   if(text == "logistic_accuracy") return RegressionKind::logistic_accuracy;
   if(text == "linear_rt") return RegressionKind::linear_rt;
   fail(ErrorKind::validation, "unknown regression kind '" + std::string(text) + "'");
}

double RegressionSpec::linear_predictor(double z_delta_e, double z_delta_s, double z_assoc) const noexcept
{
   return intercept + beta_perc * z_delta_e + beta_sem * z_delta_s + beta_assoc.value_or(0.0) * z_assoc;
}

std::vector<RegressionSpec> parse_regression_models(std::string_view json_text)
{
   nlohmann::json doc;
   try {
      doc = nlohmann::json::parse(json_text);
   } catch(const nlohmann::json::parse_error& e) {
      fail(ErrorKind::validation, std::string("regression models: ") + e.what());
   }
   if(!doc.contains("models") || !doc["models"].is_array())
      fail(ErrorKind::validation, "regression models: expected {\"models\": [...]}");

   std::vector<RegressionSpec> out;
   for(const auto& m : doc["models"]) {
      try {
         RegressionSpec s;
         s.label = m.at("label").get<std::string>();
         s.kind = parse_regression_kind(m.at("kind").get<std::string>());
         s.experiment = m.value("experiment", 0);
         s.intercept = m.at("intercept").get<double>();
         s.beta_perc = m.at("beta_perc").get<double>();
         s.beta_sem = m.at("beta_sem").get<double>();
         if(m.contains("beta_assoc") && !m["beta_assoc"].is_null()) s.beta_assoc = m["beta_assoc"].get<double>();
         for(double v : {s.intercept, s.beta_perc, s.beta_sem, s.beta_assoc.value_or(0.0)})
            if(!std::isfinite(v)) fail(ErrorKind::validation, "model '" + s.label + "': non-finite coefficient");
         out.push_back(std::move(s));
      } catch(const nlohmann::json::exception& e) {
         fail(ErrorKind::validation, std::string("regression models: ") + e.what());
      }
   }
   return out;
}

std::vector<RegressionSpec> load_regression_models(const std::filesystem::path& file)
{
   std::ifstream in(file);
   if(!in) fail(ErrorKind::io, "cannot open " + file.string());
   std::ostringstream buf;
   buf << in.rdbuf();
   return parse_regression_models(buf.str());
}

namespace {

std::string normalize_label(std::string_view s)
{
   std::string out;
   for(char c : s)
      if(!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
   return out;
}

struct Moments
{
   double mean = 0.0;
   double sd = 0.0;
};

Moments moments(std::span<const double> v)
{
   Moments m;
   m.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
   double ss = 0.0;
   for(double x : v) ss += (x - m.mean) * (x - m.mean);
   m.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
   return m;
}

} // namespace

const RegressionSpec& find_model(std::span<const RegressionSpec> models, std::string_view label)
{
   const auto key = normalize_label(label);
   for(const auto& m : models)
      if(normalize_label(m.label) == key) return m;
   std::string known;
   for(const auto& m : models) known += (known.empty() ? "" : ", ") + m.label;
   fail(ErrorKind::not_found, "unknown model '" + std::string(label) + "' (known: " + known + ")");
}

double logistic(double x) noexcept
{
   return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

std::vector<double> zscore(std::span<const double> values)
{
   if(values.size() < 2) fail(ErrorKind::validation, "zscore needs at least 2 values");
   const auto m = moments(values);
   if(!(m.sd > 0.0)) fail(ErrorKind::degenerate, "zscore: values have zero spread");
   std::vector<double> out;
   out.reserve(values.size());
   for(double v : values) out.push_back((v - m.mean) / m.sd);
   return out;
}

void standardize(std::vector<StimulusRow>& rows)
{
   std::vector<double> ds, de, as;
   for(const auto& r : rows)
      if(!r.tie) {
         ds.push_back(r.delta_s);
         de.push_back(r.delta_e);
         as.push_back(r.assoc);
      }
   if(ds.size() < 2) fail(ErrorKind::degenerate, "standardize: fewer than 2 non-tie stimulus rows");
   const auto ms = moments(ds), me = moments(de), ma = moments(as);
   auto check = [](const Moments& m, const char* what) {
      if(!(m.sd > 0.0)) fail(ErrorKind::degenerate, std::string("standardize: ") + what + " has zero spread");
   };
   check(ms, "delta_s");
   check(me, "delta_e");
   check(ma, "assoc");
   for(auto& r : rows) {
      r.z_delta_s = (r.delta_s - ms.mean) / ms.sd;
      r.z_delta_e = (r.delta_e - me.mean) / me.sd;
      r.z_assoc = (r.assoc - ma.mean) / ma.sd;
   }
}

std::vector<StimulusRow> build_stimuli(const AssociationTable& table, const NoiseModel& model)
{
   if(table.concept_count() != 2)
      fail(ErrorKind::validation, "build_stimuli needs exactly 2 concepts, got " + std::to_string(table.concept_count()));
   if(table.color_count() < 2) fail(ErrorKind::validation, "build_stimuli needs at least 2 colors");

   const auto& names = table.concepts();
   const auto ids = table.color_ids();
   const auto pairs = unordered_pairs(ids.size());
   std::vector<StimulusRow> rows;
   rows.reserve(2 * pairs.size());
   for(std::size_t t = 0; t < 2; ++t) {
      for(const auto& [i, j] : pairs) {
         const auto ctx = PairContext::from_table(table, names[0], names[1], ids[i], ids[j]);
         const auto sol = solve_2x2(ctx);
         StimulusRow r;
         r.target = names[t];
         r.color_1 = ids[i];
         r.color_2 = ids[j];
         r.tie = sol.tie;
         r.correct_color = sol.colors[t];
         r.delta_s = semantic_distance(ctx, model);
         r.delta_e = delta_e(table.colors()[i], table.colors()[j]);
         r.assoc = table.mean(t, table.color_index(r.correct_color));
         rows.push_back(std::move(r));
      }
   }
   standardize(rows);
   return rows;
}

std::vector<StimulusRow> prediction_rows(std::span<const StimulusRow> rows, bool include_ties)
{
   std::vector<StimulusRow> out;
   for(const auto& r : rows)
      if(include_ties || !r.tie) out.push_back(r);
   return out;
}

namespace {

void require_kind(const RegressionSpec& spec, RegressionKind kind)
{
   if(spec.kind != kind)
      fail(ErrorKind::validation, "model '" + spec.label + "' is " + std::string(to_string(spec.kind))
                                      + ", expected " + std::string(to_string(kind)));
}

} // namespace

std::vector<double> predict_accuracy(std::span<const StimulusRow> rows, const RegressionSpec& spec)
{
   require_kind(spec, RegressionKind::logistic_accuracy);
   std::vector<double> out;
   out.reserve(rows.size());
   for(const auto& r : rows) out.push_back(logistic(spec.linear_predictor(r.z_delta_e, r.z_delta_s, r.z_assoc)));
   return out;
}

std::vector<double> predict_rt(std::span<const StimulusRow> rows, const RegressionSpec& spec)
{
   require_kind(spec, RegressionKind::linear_rt);
   std::vector<double> out;
   out.reserve(rows.size());
   for(const auto& r : rows) out.push_back(spec.linear_predictor(r.z_delta_e, r.z_delta_s, r.z_assoc));
   return out;
}

double pearson_r(std::span<const double> a, std::span<const double> b)
{
   if(a.size() != b.size()) fail(ErrorKind::validation, "pearson_r: lists differ in length");
   if(a.size() < 3) fail(ErrorKind::validation, "pearson_r needs at least 3 pairs");
   const auto ma = moments(a), mb = moments(b);
   if(!(ma.sd > 0.0) || !(mb.sd > 0.0)) fail(ErrorKind::degenerate, "pearson_r: zero variance");
   double sab = 0.0, saa = 0.0, sbb = 0.0;
   for(std::size_t i = 0; i < a.size(); ++i) {
      const double da = a[i] - ma.mean, db = b[i] - mb.mean;
      sab += da * db;
      saa += da * da;
      sbb += db * db;
   }
   return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

} // namespace semdisc
