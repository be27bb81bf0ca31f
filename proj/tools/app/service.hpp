#pragma once

#include "json_io.hpp"

#include <filesystem>
#include <optional>

namespace semdisc::app {

/// A two-concept (or N-concept) selection resolved against the dataset.
struct Selection
{
   std::optional<int> experiment;
   std::vector<std::string> concepts;
   std::vector<ColorId> colors;
};

struct PredictionResult
{
   Selection selection;
   std::vector<StimulusRow> rows;
   std::optional<RegressionSpec> accuracy_model;
   std::optional<RegressionSpec> rt_model;
   std::vector<double> accuracy; // parallel to rows when accuracy_model
   std::vector<double> rt_ms;    // parallel to rows when rt_model
   bool include_ties = false;
};

/// JSON-in, JSON-out operations shared by the CLI and the HTTP server, so
/// both produce identical bodies. Request objects reject unknown fields.
class Service
{
 public:
   Service(Dataset dataset, std::vector<RegressionSpec> models, PaletteConstraints defaults, unsigned threads = 1);

   /// Dataset from `dir`, plus its regression presets and palette defaults
   /// when those files exist.
   static Service load(const std::filesystem::path& dir, unsigned threads = 1);

   const Dataset& dataset() const noexcept { return dataset_; }
   const std::vector<RegressionSpec>& models() const noexcept { return models_; }
   const PaletteConstraints& palette_defaults() const noexcept { return defaults_; }
   unsigned threads() const noexcept { return threads_; }

   json colors() const;
   json concepts() const;
   json semantic_distance(const json& request) const;
   json assign(const json& request) const;
   json discriminability(const json& request) const;
   json predict(const json& request) const;
   json optimize(const json& request) const;
   json palette_swap(const json& request) const;

   // Typed forms for commands that also write files.
   SemanticDistanceReport distance_report(const json& request) const;
   PredictionResult predictions(const json& request) const;
   json predict_json(const PredictionResult& r) const;

   /// Table for concepts x colors in the requested order.
   AssociationTable table_for(const Selection& s) const;

 private:
   Selection select(const json& request, bool require_two) const;

   Dataset dataset_;
   std::vector<RegressionSpec> models_;
   PaletteConstraints defaults_;
   unsigned threads_;
};

} // namespace semdisc::app
