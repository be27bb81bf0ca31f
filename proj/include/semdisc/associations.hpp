#pragma once

#include "semdisc/color.hpp"
#include "semdisc/matrix.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semdisc {

/// Rating noise: sigma(x) = scale * x * (1 - x). Zero at the scale
/// endpoints, largest at x = 0.5.
struct NoiseModel
{
   double scale = 1.4;

   /// Throws Error(validation) if mean is outside [0,1].
   double sigma(double mean) const;
};

double sigma(double mean, const NoiseModel& model = {});

/// Dense concepts x colors matrix of mean association ratings in [0,1].
/// Immutable once constructed; the constructor validates every invariant.
class AssociationTable
{
 public:
   AssociationTable(std::vector<std::string> concepts,
                    std::vector<ColorSpec> colors,
                    Matrix mean);

   const std::vector<std::string>& concepts() const noexcept { return concepts_; }
   const std::vector<ColorSpec>& colors() const noexcept { return colors_; }
   const Matrix& mean() const noexcept { return mean_; }

   std::size_t concept_count() const noexcept { return concepts_.size(); }
   std::size_t color_count() const noexcept { return colors_.size(); }

   std::vector<ColorId> color_ids() const;

   /// Throw Error(not_found) for unknown names / ids.
   std::size_t concept_index(std::string_view name) const;
   std::size_t color_index(ColorId id) const;
   const ColorSpec& color(ColorId id) const { return colors_[color_index(id)]; }

   double mean(std::size_t row, std::size_t col) const { return mean_(row, col); }
   double mean(std::string_view name, ColorId id) const
   {
      return mean_(concept_index(name), color_index(id));
   }

 private:
   std::vector<std::string> concepts_;
   std::vector<ColorSpec> colors_;
   Matrix mean_;
};

/// Colors CSV: `color_id,L,a,b` or `color_id,x,y,Y` (D65).
std::vector<ColorSpec> read_colors_csv(std::istream& in, const WhitePoint& wp = d65);

/// Ratings CSV: `concept,color_id,mean_rating`. Concept order is order of
/// first appearance; color order follows the colors source.
AssociationTable load_associations(std::istream& colors_source, std::istream& ratings_source);

/// Canonical serializations (shortest round-trip numbers, concept-major rows).
void write_colors_csv(std::ostream& out, std::span<const ColorSpec> colors);
void write_ratings_csv(std::ostream& out, const AssociationTable& table);

/// Rows/columns in the requested order. Empty or unknown selections throw.
AssociationTable subset(const AssociationTable& table,
                        std::span<const std::string> concepts,
                        std::span<const ColorId> color_ids);

} // namespace semdisc
