#pragma once

#include "semdisc/associations.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace semdisc {

/// One published experiment: its concept pair and palette, with the colors
/// in table order (first concept's strong associates first).
struct ExperimentSpec
{
   int number = 0;
   std::array<std::string, 2> concepts;
   std::vector<ColorId> colors;
   std::vector<std::string> labels; // parallel to colors, e.g. "c1", "w4"
};

/// `experiment,concept,label,color_id`
std::vector<ExperimentSpec> read_experiment_colors(std::istream& in);

struct Dataset
{
   std::string id;
   AssociationTable table;
   std::vector<ExperimentSpec> experiments;
   std::vector<std::filesystem::path> files; // sources, for manifests

   const ExperimentSpec& experiment(int number) const;
   /// 2 x 8 table for an experiment, colors in table order.
   AssociationTable experiment_table(int number) const;
};

inline constexpr const char* kColorsFile = "uw58_colors.csv";
inline constexpr const char* kRatingsFile = "uw58_fruit_associations.csv";
inline constexpr const char* kExperimentsFile = "experiment_colors.csv";
inline constexpr const char* kColorsXyYFile = "uw58_colors_xyY.csv";
inline constexpr const char* kRegressionFile = "regression_models.json";
inline constexpr const char* kPaletteDefaultsFile = "palette_defaults.json";

/// $SEMDISC_DATA_DIR if set, otherwise the data directory recorded at build time.
std::filesystem::path default_data_dir();

/// Loads colors + ratings (+ experiment_colors.csv when present) from `dir`.
Dataset load_dataset(const std::filesystem::path& dir);

} // namespace semdisc
