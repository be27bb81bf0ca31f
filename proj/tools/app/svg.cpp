#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace semdisc::app {

namespace {

constexpr double kLeft = 70, kRight = 20, kTop = 20, kColumn = 56;
constexpr double kPlotHeight = 180, kSwatch = 22, kPanelGap = 60;

std::string num(double v)
{
   char buf[32];
   std::snprintf(buf, sizeof buf, "%.2f", v);
   return buf;
}

std::string escape(std::string_view s)
{
   std::string out;
   for(char c : s) {
      switch(c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
      }
   }
   return out;
}

PlotPanel pair_panel(const SemanticDistanceReport& r,
                     const AssociationTable& table,
                     const Matrix& values,
                     std::string title,
                     double y_max)
{
   PlotPanel p{std::move(title), y_max, {}};
   for(const auto& [i, j] : unordered_pairs(r.size()))
      p.points.push_back({j, i, j, values(i, j), table.color(r.color_ids[i]).srgb().hex(), false});
   return p;
}

} // namespace

PlotPanel delta_s_panel(const SemanticDistanceReport& r, const AssociationTable& table)
{
   return pair_panel(r, table, r.delta_s, "Semantic distance (delta S): " + r.concepts[0] + " / " + r.concepts[1], 1.0);
}

PlotPanel delta_e_panel(const SemanticDistanceReport& r, const AssociationTable& table)
{
   double hi = 0.0;
   for(const auto& [i, j] : unordered_pairs(r.size())) hi = std::max(hi, r.delta_e(i, j));
   const double y_max = std::max(20.0, std::ceil(hi / 20.0) * 20.0);
   return pair_panel(r, table, r.delta_e, "Perceptual distance (CIELAB delta E)", y_max);
}

PlotPanel accuracy_panel(const PredictionResult& p, const AssociationTable& table)
{
   const std::string label = p.accuracy_model ? p.accuracy_model->label : "";
   PlotPanel panel{"Predicted accuracy (" + label + "): circle = " + p.selection.concepts[0]
                       + ", square = " + p.selection.concepts[1],
                   1.0,
                   {}};
   const auto& ids = p.selection.colors;
   auto pos = [&](ColorId id) {
      return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
   };
   for(std::size_t k = 0; k < p.rows.size() && k < p.accuracy.size(); ++k) {
      const auto& row = p.rows[k];
      const bool second = row.target == p.selection.concepts[1];
      const std::size_t i = pos(row.color_1), j = pos(row.color_2);
      panel.points.push_back(
          {j, 2 * i + (second ? 1 : 0), 2 * j, p.accuracy[k], table.color(row.color_1).srgb().hex(), second});
   }
   return panel;
}

std::string plot_svg(const AssociationTable& table, const std::vector<PlotPanel>& panels)
{
   const std::size_t n = table.color_count();
   const double width = kLeft + kColumn * static_cast<double>(n) + kRight;
   const double panel_h = kPlotHeight + kSwatch + kPanelGap;
   const double height = kTop + panel_h * static_cast<double>(panels.size());

   std::ostringstream s;
   s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
   s << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

   const auto ids = table.color_ids();
   for(std::size_t k = 0; k < panels.size(); ++k) {
      const auto& p = panels[k];
      const double top = kTop + panel_h * static_cast<double>(k) + 16;
      const double bottom = top + kPlotHeight;
      auto y_of = [&](double v) { return bottom - std::clamp(v / p.y_max, 0.0, 1.0) * kPlotHeight; };

      s << "<g class=\"panel\">\n";
      s << "<text x=\"" << num(kLeft) << "\" y=\"" << num(top - 6) << "\" font-size=\"12\">" << escape(p.title)
        << "</text>\n";
      s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(top) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(bottom) << "\" stroke=\"#000\"/>\n";
      s << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(width - kRight)
        << "\" y2=\"" << num(bottom) << "\" stroke=\"#000\"/>\n";
      for(int t = 0; t <= 4; ++t) {
         const double v = p.y_max * t / 4.0;
         const double y = y_of(v);
         s << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(width - kRight)
           << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
         s << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v)
           << "</text>\n";
      }
      for(std::size_t c = 0; c < n; ++c) {
         const double x = kLeft + kColumn * (static_cast<double>(c) + 0.5);
         s << "<rect x=\"" << num(x - kSwatch / 2) << "\" y=\"" << num(bottom + 6) << "\" width=\"" << num(kSwatch)
           << "\" height=\"" << num(kSwatch) << "\" fill=\"" << table.colors()[c].srgb().hex()
           << "\" stroke=\"#000\"><title>color " << ids[c].value << "</title></rect>\n";
      }
      for(const auto& pt : p.points) {
         const double spread = kColumn * 0.8;
         const double offset =
             pt.slots > 1 ? (static_cast<double>(pt.slot) / static_cast<double>(pt.slots - 1) - 0.5) * spread : 0.0;
         const double x = kLeft + kColumn * (static_cast<double>(pt.column) + 0.5) + offset;
         const double y = y_of(pt.value);
         if(pt.square)
            s << "<rect x=\"" << num(x - 4) << "\" y=\"" << num(y - 4) << "\" width=\"8\" height=\"8\"";
         else
            s << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4.5\"";
         s << " fill=\"" << pt.fill << "\" stroke=\"#000\" stroke-width=\"0.8\"/>\n";
      }
      s << "</g>\n";
   }
   s << "</svg>\n";
   return s.str();
}

} // namespace semdisc::app
