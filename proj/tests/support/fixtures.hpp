#pragma once

#include "semdisc/dataset.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fixture {

inline const semdisc::Dataset& bundled()
{
   static const semdisc::Dataset d = semdisc::load_dataset(SEMDISC_TEST_DATA_DIR);
   return d;
}

inline std::filesystem::path data_dir() { return SEMDISC_TEST_DATA_DIR; }

/// concepts x colors table with anonymous grey colors spaced far apart in L*
/// and hue, ids 1..cols.
inline semdisc::AssociationTable toy_table(std::vector<std::string> concepts,
                                           const std::vector<std::vector<double>>& means)
{
   using namespace semdisc;
   const std::size_t cols = means.front().size();
   std::vector<ColorSpec> colors;
   for(std::size_t c = 0; c < cols; ++c) {
      const double h = 2.0 * 3.14159265358979 * double(c) / double(cols);
      colors.push_back(ColorSpec::from_lab({50.0, 40.0 * std::cos(h), 40.0 * std::sin(h)}, ColorId{int(c) + 1}));
   }
   Matrix m(concepts.size(), cols);
   for(std::size_t r = 0; r < concepts.size(); ++r)
      for(std::size_t c = 0; c < cols; ++c) m(r, c) = means[r][c];
   return AssociationTable(std::move(concepts), std::move(colors), std::move(m));
}

} // namespace fixture
