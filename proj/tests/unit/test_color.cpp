#include "fixtures.hpp"
#include "oracles.hpp"

#include "semdisc/color.hpp"
#include "semdisc/error.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace semdisc;

namespace {

void check_xyY(const XyY& got, double x, double y, double Y, double txy, double tY)
{
   CHECK(std::abs(got.x - x) <= txy);
   CHECK(std::abs(got.y - y) <= txy);
   CHECK(std::abs(got.Y - Y) <= tY);
}

void check_lab(const Lab& got, double L, double a, double b, double tol)
{
   CHECK(std::abs(got.L - L) <= tol);
   CHECK(std::abs(got.a - a) <= tol);
   CHECK(std::abs(got.b - b) <= tol);
}

} // namespace

TEST_CASE("white point defaults to D65")
{
   constexpr WhitePoint wp;
   CHECK(wp.x == 0.3127);
   CHECK(wp.y == 0.3290);
   CHECK(wp.Y == 100.0);
   CHECK(d65 == wp);
}

TEST_CASE("lab_to_xyY published examples")
{
   check_xyY(lab_to_xyY({50, 0, 0}), 0.3127, 0.3290, 18.419, 0.001, 0.01);
   check_xyY(lab_to_xyY({75, 21.04, 76.21}), 0.492, 0.443, 48.28, 0.001, 0.01);
   const XyY black = lab_to_xyY({0, 0, 0});
   CHECK(black.x == d65.x);
   CHECK(black.y == d65.y);
   CHECK(black.Y == 0.0);
}

TEST_CASE("xyY_to_lab published examples")
{
   check_lab(xyY_to_lab({0.567, 0.299, 18.42}), 50, 73.59, 28.89, 0.5);
   check_lab(xyY_to_lab({0.3127, 0.3290, 100}), 100, 0, 0, 1e-3);
   check_lab(xyY_to_lab({0.270, 0.433, 48.28}), 75, -51.24, 22.35, 0.5);
}

TEST_CASE("xyY_to_lab rejects zero chromaticity y")
{
   try {
      xyY_to_lab({0.3, 0.0, 10});
      FAIL("expected an error");
   } catch(const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate);
   }
}

TEST_CASE("conversions agree with the rational-constant oracle")
{
   std::mt19937_64 rng(11);
   std::uniform_real_distribution<double> L(0, 100), ab(-128, 128);
   for(int i = 0; i < 2000; ++i) {
      const Lab lab{L(rng), ab(rng), ab(rng)};
      const auto xyz = oracle::lab_to_xyz(lab.L, lab.a, lab.b);
      const auto ref = oracle::xyz_to_xyY(xyz);
      const XyY got = lab_to_xyY(lab);
      if(ref.v[2] <= 0) continue; // far outside the spectrum locus
      CHECK(std::abs(got.x - double(ref.v[0])) < 1e-9);
      CHECK(std::abs(got.y - double(ref.v[1])) < 1e-9);
      CHECK(std::abs(got.Y - double(ref.v[2])) < 1e-9);
   }
}

TEST_CASE("lab -> xyY -> lab round trip within 1e-6")
{
   std::mt19937_64 rng(5);
   std::uniform_real_distribution<double> L(0.5, 100), ab(-100, 100);
   for(int i = 0; i < 20000; ++i) {
      const Lab lab{L(rng), ab(rng), ab(rng)};
      const XyY xyY = lab_to_xyY(lab);
      if(!(xyY.y > 0) || !(xyY.Y > 0)) continue;
      const Lab back = xyY_to_lab(xyY);
      REQUIRE(std::abs(back.L - lab.L) <= 1e-6);
      REQUIRE(std::abs(back.a - lab.a) <= 1e-6);
      REQUIRE(std::abs(back.b - lab.b) <= 1e-6);
   }
}

TEST_CASE("lch is cylindrical lab with hue in [0, 360)")
{
   const Lch c = lab_to_lch({60, -3, -4});
   CHECK(c.L == 60);
   CHECK(c.C == doctest::Approx(5.0));
   CHECK(c.h == doctest::Approx(std::atan2(-4.0, -3.0) * 180 / 3.14159265358979323846 + 360));
   CHECK(lab_to_lch({50, 0, 0}).h >= 0.0);
   const Lch pos = lab_to_lch({50, 1, 0});
   CHECK(pos.h == 0.0);
   const Lab back = lch_to_lab(c);
   check_lab(back, 60, -3, -4, 1e-12);
   std::mt19937_64 rng(3);
   std::uniform_real_distribution<double> ab(-128, 128);
   for(int i = 0; i < 1000; ++i) {
      const Lch h = lab_to_lch({50, ab(rng), ab(rng)});
      CHECK(h.h >= 0.0);
      CHECK(h.h < 360.0);
   }
}

TEST_CASE("srgb examples")
{
   const SrgbResult white = srgb_of({100, 0, 0});
   CHECK(white.in_gamut);
   CHECK(white.rgb.r == doctest::Approx(1.0).epsilon(1e-9));
   CHECK(white.rgb.g == doctest::Approx(1.0).epsilon(1e-9));
   CHECK(white.rgb.b == doctest::Approx(1.0).epsilon(1e-9));
   CHECK(white.hex() == "#ffffff");
   CHECK(srgb_of({50, 74.90, 3.93}).in_gamut);

   const SrgbResult out = srgb_of({50, -128, -128});
   CHECK_FALSE(out.in_gamut);
   for(double v : {out.rgb.r, out.rgb.g, out.rgb.b}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
   }
}

TEST_CASE("gamut verdict on (50, -128, -128) matches a brute-force cube scan")
{
   // A 1/64 grid step moves LAB by well under 5 units; a point farther than
   // that from every grid node is outside the solid.
   CHECK(oracle::nearest_gamut_distance(50, -128, -128) > 20.0L);
   CHECK(oracle::nearest_gamut_distance(50, 74.90, 3.93) < 5.0L);
}

TEST_CASE("srgb channels match the primaries-derived oracle")
{
   std::mt19937_64 rng(9);
   std::uniform_real_distribution<double> L(1, 99), ab(-60, 60);
   for(int i = 0; i < 2000; ++i) {
      const Lab lab{L(rng), ab(rng), ab(rng)};
      const auto ref = oracle::lab_to_srgb(lab.L, lab.a, lab.b);
      const SrgbResult got = srgb_of(lab);
      bool inside = true;
      for(auto v : ref.v) inside = inside && v >= -1e-6L && v <= 1.0L + 1e-6L;
      bool clear = true;
      for(auto v : ref.v) clear = clear && (std::fabs(v) > 1e-6L && std::fabs(v - 1.0L) > 1e-6L);
      if(clear) CHECK(got.in_gamut == inside);
      if(inside) {
         CHECK(std::abs(got.rgb.r - double(ref.v[0])) < 1e-9);
         CHECK(std::abs(got.rgb.g - double(ref.v[1])) < 1e-9);
         CHECK(std::abs(got.rgb.b - double(ref.v[2])) < 1e-9);
      }
   }
}

TEST_CASE("delta_e examples")
{
   const auto c1 = ColorSpec::from_lab({75, 21.04, 76.21});
   const auto c2 = ColorSpec::from_lab({75, -2.62, 49.93});
   const auto c4 = ColorSpec::from_lab({75, -27.58, 48.62});
   const auto euclid = [](const Lab& p, const Lab& q) {
      return double(std::sqrt((oracle::ld(p.L) - q.L) * (oracle::ld(p.L) - q.L) +
                              (oracle::ld(p.a) - q.a) * (oracle::ld(p.a) - q.a) +
                              (oracle::ld(p.b) - q.b) * (oracle::ld(p.b) - q.b)));
   };
   CHECK(std::abs(delta_e(c1, c2) - 35.36) <= 0.01);
   CHECK(std::abs(delta_e(c1, c4) - 55.90) <= 0.01);
   CHECK(delta_e(c1, c2) == doctest::Approx(euclid(c1.lab(), c2.lab())));
   CHECK(delta_e(c1, c1) == 0.0);
}

TEST_CASE("delta_e rejects mixed white points")
{
   const auto a = ColorSpec::from_lab({50, 0, 0});
   const auto b = ColorSpec::from_lab({50, 0, 0}, std::nullopt, WhitePoint{0.3457, 0.3585, 100});
   CHECK_THROWS_AS(delta_e(a, b), Error);
}

TEST_CASE("delta_e is a metric on random triples")
{
   std::mt19937_64 rng(21);
   std::uniform_real_distribution<double> L(0, 100), ab(-128, 128);
   for(int i = 0; i < 20000; ++i) {
      const Lab p{L(rng), ab(rng), ab(rng)}, q{L(rng), ab(rng), ab(rng)}, r{L(rng), ab(rng), ab(rng)};
      REQUIRE(delta_e(p, q) == delta_e(q, p));
      REQUIRE(delta_e(p, p) == 0.0);
      REQUIRE(delta_e(p, q) > 0.0);
      REQUIRE(delta_e(p, r) <= delta_e(p, q) + delta_e(q, r) + 1e-12);
   }
}

TEST_CASE("bundled colors: stored xyY matches stored LAB and every color is in gamut")
{
   const auto& table = fixture::bundled().table;
   REQUIRE(table.color_count() == 58);
   std::ifstream in(fixture::data_dir() / "uw58_colors_xyY.csv");
   const auto xyY = read_colors_csv(in);
   REQUIRE(xyY.size() == 58);
   for(std::size_t i = 0; i < 58; ++i) {
      const ColorSpec& lab = table.colors()[i];
      REQUIRE(xyY[i].id() == lab.id());
      check_lab(xyY[i].lab(), lab.lab().L, lab.lab().a, lab.lab().b, 0.5);
      CHECK(lab.srgb().in_gamut);
   }
}
