#include "semdisc/rng.hpp"

namespace semdisc::detail {

Ziggurat::Ziggurat() noexcept
{
   double f = std::exp(-0.5 * r * r);
   x[0] = v / f; // base layer: rectangle plus tail
   x[1] = r;
   x[layers] = 0.0;
   for(int i = 2; i < layers; ++i) {
      x[i] = std::sqrt(-2.0 * std::log(v / x[i - 1] + f));
      f = std::exp(-0.5 * x[i] * x[i]);
   }
   for(int i = 0; i < layers; ++i) ratio[i] = x[i + 1] / x[i];
}

const Ziggurat kZiggurat;

} // namespace semdisc::detail
