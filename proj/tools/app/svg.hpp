#pragma once

#include "service.hpp"

#include <string>
#include <vector>

namespace semdisc::app {

struct PlotPoint
{
   std::size_t column = 0; // palette position on the x-axis
   std::size_t slot = 0;   // spreads points sharing a column
   std::size_t slots = 1;
   double value = 0.0;
   std::string fill; // "#rrggbb"
   bool square = false;
};

struct PlotPanel
{
   std::string title;
   double y_max = 1.0;
   std::vector<PlotPoint> points;
};

/// Pair (i, j), i < j, plotted at column j and filled with color i.
PlotPanel delta_s_panel(const SemanticDistanceReport& r, const AssociationTable& table);
PlotPanel delta_e_panel(const SemanticDistanceReport& r, const AssociationTable& table);
/// Predicted accuracy per row; circles for the first target, squares for the second.
PlotPanel accuracy_panel(const PredictionResult& p, const AssociationTable& table);

/// Stacked scatter panels over one palette axis with swatches under each
/// axis. Output depends only on the inputs (no timestamps).
std::string plot_svg(const AssociationTable& table, const std::vector<PlotPanel>& panels);

} // namespace semdisc::app
