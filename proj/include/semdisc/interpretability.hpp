#pragma once

#include "semdisc/associations.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semdisc {

enum class RegressionKind { logistic_accuracy, linear_rt };

std::string_view to_string(RegressionKind kind) noexcept;
RegressionKind parse_regression_kind(std::string_view text);

/// Fixed-effect coefficients of a published accuracy or RT model.
/// beta_perc multiplies z(ΔE), beta_sem z(ΔS), beta_assoc z(assoc).
struct RegressionSpec
{
   RegressionKind kind = RegressionKind::logistic_accuracy;
   std::string label;
   int experiment = 0;
   double intercept = 0.0;
   double beta_perc = 0.0;
   double beta_sem = 0.0;
   std::optional<double> beta_assoc;

   double linear_predictor(double z_delta_e, double z_delta_s, double z_assoc) const noexcept;
};

/// `{"models": [{"label", "kind", "experiment", "intercept", "beta_perc",
/// "beta_sem", "beta_assoc"?}, ...]}`
std::vector<RegressionSpec> parse_regression_models(std::string_view json_text);
std::vector<RegressionSpec> load_regression_models(const std::filesystem::path& file);

/// Lookup ignoring case and whitespace, so "Acc2.2" finds "Acc 2.2".
const RegressionSpec& find_model(std::span<const RegressionSpec> models, std::string_view label);

struct StimulusRow
{
   std::string target;
   ColorId color_1;
   ColorId color_2;
   ColorId correct_color;
   double delta_s = 0.0;
   double delta_e = 0.0;
   double assoc = 0.0; // target's association with correct_color
   double z_delta_s = 0.0;
   double z_delta_e = 0.0;
   double z_assoc = 0.0;
   bool tie = false; // no correct answer; excluded from standardization
};

inline constexpr const char* kZscoreScope = "batch: non-tie stimulus rows of this request, sample sd (n-1)";

/// One row per (target, color pair), targets in table order, pairs (i<j) in
/// palette order. The correct color is the one the target gets under the
/// 2 x 2 assignment of the pair. Rows are standardized (see standardize).
std::vector<StimulusRow> build_stimuli(const AssociationTable& table, const NoiseModel& model = {});

/// Recomputes z_* from the non-tie rows (mean and n-1 sd of that batch) and
/// applies the same transform to tie rows.
void standardize(std::vector<StimulusRow>& rows);

/// Non-tie rows, or all rows when include_ties.
std::vector<StimulusRow> prediction_rows(std::span<const StimulusRow> rows, bool include_ties = false);

/// (v - mean) / sd with sd over n-1. Throws on n < 2 or zero spread.
std::vector<double> zscore(std::span<const double> values);

/// Logistic of the linear predictor, per row.
std::vector<double> predict_accuracy(std::span<const StimulusRow> rows, const RegressionSpec& spec);
/// Linear predictor in milliseconds, per row.
std::vector<double> predict_rt(std::span<const StimulusRow> rows, const RegressionSpec& spec);

/// Sample Pearson correlation; needs equal lengths >= 3 and non-zero spread.
double pearson_r(std::span<const double> a, std::span<const double> b);

double logistic(double x) noexcept;

} // namespace semdisc
