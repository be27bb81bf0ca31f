#include "semdisc/associations.hpp"

#include "semdisc/error.hpp"
#include "semdisc/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <unordered_map>

namespace semdisc {

double NoiseModel::sigma(double mean) const
{
   if(!(mean >= 0.0 && mean <= 1.0))
      fail(ErrorKind::validation, "sigma: mean rating " + format_double(mean) + " outside [0,1]");
   return scale * mean * (1.0 - mean);
}

double sigma(double mean, const NoiseModel& model) { return model.sigma(mean); }

AssociationTable::AssociationTable(std::vector<std::string> concepts,
                                   std::vector<ColorSpec> colors,
                                   Matrix mean)
    : concepts_(std::move(concepts))
    , colors_(std::move(colors))
    , mean_(std::move(mean))
{
   if(mean_.rows() != concepts_.size() || mean_.cols() != colors_.size())
      fail(ErrorKind::validation, "association table: matrix shape does not match labels");

   std::set<std::string_view> names;
   for(const auto& c : concepts_) {
      if(c.empty()) fail(ErrorKind::validation, "association table: empty concept name");
      if(!names.insert(c).second)
         fail(ErrorKind::validation, "association table: duplicate concept '" + c + "'");
   }
   std::set<ColorId> ids;
   for(const auto& c : colors_) {
      if(!c.id()) fail(ErrorKind::validation, "association table: color without id");
      if(!ids.insert(*c.id()).second)
         fail(ErrorKind::validation,
              "association table: duplicate color id " + to_string(*c.id()));
   }
   for(std::size_t r = 0; r < mean_.rows(); ++r)
      for(std::size_t c = 0; c < mean_.cols(); ++c) {
         const double v = mean_(r, c);
         if(!(v >= 0.0 && v <= 1.0))
            fail(ErrorKind::validation,
                 "association table: rating " + format_double(v) + " for (" + concepts_[r]
                     + ", " + to_string(*colors_[c].id()) + ") outside [0,1]");
      }
}

std::vector<ColorId> AssociationTable::color_ids() const
{
   std::vector<ColorId> out;
   out.reserve(colors_.size());
   for(const auto& c : colors_) out.push_back(*c.id());
   return out;
}

std::size_t AssociationTable::concept_index(std::string_view name) const
{
   const auto it = std::find(concepts_.begin(), concepts_.end(), name);
   if(it == concepts_.end())
      fail(ErrorKind::not_found, "unknown concept '" + std::string(name) + "'");
   return static_cast<std::size_t>(it - concepts_.begin());
}

std::size_t AssociationTable::color_index(ColorId id) const
{
   for(std::size_t i = 0; i < colors_.size(); ++i)
      if(*colors_[i].id() == id) return i;
   fail(ErrorKind::not_found, "unknown color id " + to_string(id));
}

std::vector<ColorSpec> read_colors_csv(std::istream& in, const WhitePoint& wp)
{
   CsvReader csv(in);
   const auto& h = csv.header();
   bool lab = false;
   if(h == std::vector<std::string>{"color_id", "L", "a", "b"})
      lab = true;
   else if(h != std::vector<std::string>{"color_id", "x", "y", "Y"})
      fail(ErrorKind::validation,
           "colors CSV: header must be 'color_id,L,a,b' or 'color_id,x,y,Y'");

   std::vector<ColorSpec> colors;
   std::set<ColorId> seen;
   std::vector<std::string> f;
   while(csv.next(f)) {
      const std::string where = "colors CSV line " + std::to_string(csv.line_number());
      const ColorId id{parse_int(f[0], where + " color_id")};
      if(!seen.insert(id).second)
         fail(ErrorKind::validation, where + ": duplicate color id " + to_string(id));
      const double v1 = parse_double(f[1], where);
      const double v2 = parse_double(f[2], where);
      const double v3 = parse_double(f[3], where);
      if(lab) {
         if(!(v1 >= 0.0 && v1 <= 100.0))
            fail(ErrorKind::validation, where + ": L* outside [0,100]");
         colors.push_back(ColorSpec::from_lab({v1, v2, v3}, id, wp));
      } else {
         colors.push_back(ColorSpec::from_xyY({v1, v2, v3}, id, wp));
      }
   }
   if(colors.empty()) fail(ErrorKind::validation, "colors CSV: no rows");
   return colors;
}

AssociationTable load_associations(std::istream& colors_source, std::istream& ratings_source)
{
   auto colors = read_colors_csv(colors_source);
   std::unordered_map<ColorId, std::size_t> column;
   for(std::size_t i = 0; i < colors.size(); ++i) column.emplace(*colors[i].id(), i);

   CsvReader csv(ratings_source);
   if(csv.header() != std::vector<std::string>{"concept", "color_id", "mean_rating"})
      fail(ErrorKind::validation, "ratings CSV: header must be 'concept,color_id,mean_rating'");

   std::vector<std::string> concepts;
   std::map<std::string, std::size_t, std::less<>> concept_row;
   std::vector<std::vector<std::optional<double>>> cells;

   std::vector<std::string> f;
   while(csv.next(f)) {
      const std::string where = "ratings CSV line " + std::to_string(csv.line_number());
      if(f[0].empty()) fail(ErrorKind::validation, where + ": empty concept name");
      const ColorId id{parse_int(f[1], where + " color_id")};
      const double v = parse_double(f[2], where + " mean_rating");
      if(!(v >= 0.0 && v <= 1.0))
         fail(ErrorKind::validation,
              where + ": rating " + std::string(f[2]) + " outside [0,1]");
      const auto col = column.find(id);
      if(col == column.end())
         fail(ErrorKind::validation, where + ": color id " + to_string(id) + " not in colors source");
      auto [it, inserted] = concept_row.try_emplace(f[0], concepts.size());
      if(inserted) {
         concepts.push_back(f[0]);
         cells.emplace_back(colors.size());
      }
      auto& cell = cells[it->second][col->second];
      if(cell)
         fail(ErrorKind::validation,
              where + ": duplicate rating for (" + f[0] + ", " + to_string(id) + ")");
      cell = v;
   }
   if(concepts.empty()) fail(ErrorKind::validation, "ratings CSV: no rows");

   Matrix mean(concepts.size(), colors.size());
   for(std::size_t r = 0; r < concepts.size(); ++r)
      for(std::size_t c = 0; c < colors.size(); ++c) {
         if(!cells[r][c])
            fail(ErrorKind::validation, "ratings CSV: missing rating for (" + concepts[r] + ", "
                                            + to_string(*colors[c].id()) + ")");
         mean(r, c) = *cells[r][c];
      }
   return AssociationTable(std::move(concepts), std::move(colors), std::move(mean));
}

void write_colors_csv(std::ostream& out, std::span<const ColorSpec> colors)
{
   out << "color_id,L,a,b\n";
   for(const auto& c : colors)
      out << (c.id() ? to_string(*c.id()) : std::string{}) << ',' << format_double(c.lab().L)
          << ',' << format_double(c.lab().a) << ',' << format_double(c.lab().b) << '\n';
}

void write_ratings_csv(std::ostream& out, const AssociationTable& table)
{
   out << "concept,color_id,mean_rating\n";
   for(std::size_t r = 0; r < table.concept_count(); ++r)
      for(std::size_t c = 0; c < table.color_count(); ++c)
         out << table.concepts()[r] << ',' << to_string(*table.colors()[c].id()) << ','
             << format_double(table.mean(r, c)) << '\n';
}

AssociationTable subset(const AssociationTable& table,
                        std::span<const std::string> concepts,
                        std::span<const ColorId> color_ids)
{
   if(concepts.empty()) fail(ErrorKind::validation, "subset: empty concept list");
   if(color_ids.empty()) fail(ErrorKind::validation, "subset: empty color id list");

   std::vector<std::size_t> rows;
   for(const auto& c : concepts) rows.push_back(table.concept_index(c));
   std::vector<std::size_t> cols;
   std::vector<ColorSpec> colors;
   for(const auto id : color_ids) {
      cols.push_back(table.color_index(id));
      colors.push_back(table.colors()[cols.back()]);
   }
   Matrix mean(rows.size(), cols.size());
   for(std::size_t r = 0; r < rows.size(); ++r)
      for(std::size_t c = 0; c < cols.size(); ++c) mean(r, c) = table.mean(rows[r], cols[c]);
   // Duplicate names / ids are rejected by the table constructor.
   return AssociationTable({concepts.begin(), concepts.end()}, std::move(colors), std::move(mean));
}

} // namespace semdisc
