#include "semdisc/dataset.hpp"

#include "semdisc/error.hpp"
#include "semdisc/text.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>

#ifndef SEMDISC_DEFAULT_DATA_DIR
#define SEMDISC_DEFAULT_DATA_DIR "data"
#endif

namespace semdisc {

namespace {

std::ifstream open_input(const std::filesystem::path& p)
{
   std::ifstream in(p, std::ios::binary);
   if(!in) fail(ErrorKind::io, "cannot open '" + p.string() + "'");
   return in;
}

} // namespace

std::vector<ExperimentSpec> read_experiment_colors(std::istream& in)
{
   CsvReader csv(in);
   if(csv.header() != std::vector<std::string>{"experiment", "concept", "label", "color_id"})
      fail(ErrorKind::validation,
           "experiment colors CSV: header must be 'experiment,concept,label,color_id'");

   std::map<int, ExperimentSpec> by_number;
   std::map<int, std::vector<std::string>> concept_order;
   std::vector<std::string> f;
   while(csv.next(f)) {
      const std::string where = "experiment colors CSV line " + std::to_string(csv.line_number());
      const int n = parse_int(f[0], where);
      auto& e = by_number[n];
      e.number = n;
      auto& order = concept_order[n];
      if(std::find(order.begin(), order.end(), f[1]) == order.end()) {
         if(order.size() == 2) fail(ErrorKind::validation, where + ": more than two concepts");
         order.push_back(f[1]);
      }
      e.labels.push_back(f[2]);
      e.colors.push_back(ColorId{parse_int(f[3], where)});
   }
   std::vector<ExperimentSpec> out;
   for(auto& [n, e] : by_number) {
      const auto& order = concept_order[n];
      if(order.size() != 2)
         fail(ErrorKind::validation, "experiment " + std::to_string(n) + ": needs two concepts");
      e.concepts = {order[0], order[1]};
      out.push_back(std::move(e));
   }
   return out;
}

const ExperimentSpec& Dataset::experiment(int number) const
{
   for(const auto& e : experiments)
      if(e.number == number) return e;
   fail(ErrorKind::not_found, "unknown experiment " + std::to_string(number));
}

AssociationTable Dataset::experiment_table(int number) const
{
   const auto& e = experiment(number);
   return subset(table, e.concepts, e.colors);
}

std::filesystem::path default_data_dir()
{
   if(const char* env = std::getenv("SEMDISC_DATA_DIR"); env && *env) return env;
   return SEMDISC_DEFAULT_DATA_DIR;
}

Dataset load_dataset(const std::filesystem::path& dir)
{
   const auto colors_path = dir / kColorsFile;
   const auto ratings_path = dir / kRatingsFile;
   auto colors = open_input(colors_path);
   auto ratings = open_input(ratings_path);
   Dataset ds{dir.filename().string(), load_associations(colors, ratings), {}, {colors_path, ratings_path}};
   if(ds.id.empty()) ds.id = dir.string();

   const auto exp_path = dir / kExperimentsFile;
   if(std::filesystem::exists(exp_path)) {
      auto in = open_input(exp_path);
      ds.experiments = read_experiment_colors(in);
      ds.files.push_back(exp_path);
      for(const auto& e : ds.experiments) {
         for(const auto& c : e.concepts) ds.table.concept_index(c);
         for(const auto id : e.colors) ds.table.color_index(id);
      }
   }
   return ds;
}

} // namespace semdisc
