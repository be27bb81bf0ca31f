#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace semdisc {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
   x += 0x9E3779B97F4A7C15ull;
   x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
   x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
   return x ^ (x >> 31);
}

namespace detail {

/// Layer tables for Doornik's ZIGNOR variant of the ziggurat (256 layers).
struct Ziggurat
{
   static constexpr int layers = 256;
   static constexpr double r = 3.6541528853610088; // start of the tail
   static constexpr double v = 0.00492867323399;   // area of each layer
   std::array<double, layers + 1> x{};
   std::array<double, layers> ratio{};

   Ziggurat() noexcept;
};

extern const Ziggurat kZiggurat;

} // namespace detail

/// Counter-based stream: draw k of stream s under seed m is a pure function
/// of (m, s, k). Samples therefore never depend on which worker drew them.
class SampleStream
{
 public:
   static constexpr const char* algorithm = "splitmix64-counter/ziggurat-256";

   constexpr SampleStream(std::uint64_t seed, std::uint64_t stream) noexcept
       : key_(splitmix64(seed) ^ splitmix64(~stream + 0x632BE59BD9B4E019ull))
   {}

   constexpr std::uint64_t next_u64() noexcept { return splitmix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

   /// Uniform in (0, 1).
   constexpr double uniform() noexcept { return to_unit(next_u64()); }

   /// Standard normal.
   double normal() noexcept
   {
      const auto& z = detail::kZiggurat;
      for(;;) {
         const std::uint64_t bits = next_u64();
         const double u = 2.0 * to_unit(bits) - 1.0; // top 53 bits
         const auto i = static_cast<unsigned>(bits & 0xFF); // low 8 bits, disjoint
         if(std::abs(u) < z.ratio[i]) return u * z.x[i];
         if(i == 0) return tail(u < 0.0);
         const double x = u * z.x[i];
         const double f0 = std::exp(-0.5 * (z.x[i] * z.x[i] - x * x));
         const double f1 = std::exp(-0.5 * (z.x[i + 1] * z.x[i + 1] - x * x));
         if(f1 + uniform() * (f0 - f1) < 1.0) return x;
      }
   }

   double normal(double mean, double sd) noexcept { return mean + sd * normal(); }

 private:
   static constexpr double to_unit(std::uint64_t bits) noexcept
   {
      return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
   }

   double tail(bool negative) noexcept
   {
      constexpr double r = detail::Ziggurat::r;
      double x, y;
      do {
         x = std::log(uniform()) / r;
         y = std::log(uniform());
      } while(-2.0 * y < x * x);
      return negative ? x - r : r - x;
   }

   std::uint64_t key_;
   std::uint64_t counter_ = 0;
};

} // namespace semdisc
