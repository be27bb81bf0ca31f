#include "semdisc/color.hpp"

#include "semdisc/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace semdisc {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) noexcept
{
   return t > kDelta * kDelta * kDelta ? std::cbrt(t)
                                       : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t) noexcept
{
   return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0);
}

Vec3 white_xyz(const WhitePoint& wp) noexcept
{
   return {wp.x / wp.y * wp.Y, wp.Y, (1.0 - wp.x - wp.y) / wp.y * wp.Y};
}

Vec3 mul(const Mat3& m, const Vec3& v) noexcept
{
   Vec3 out{};
   for(std::size_t i = 0; i < 3; ++i)
      out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
   return out;
}

Mat3 inverse(const Mat3& m) noexcept
{
   const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                      - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                      + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
   Mat3 r{};
   r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
   r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
   r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
   r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
   r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
   r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
   r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
   r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
   r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
   return r;
}

// XYZ (white Y = 1) -> linear sRGB, built from the IEC 61966-2-1 primaries and
// the given white so that the white point maps exactly to (1, 1, 1).
Mat3 xyz_to_linear_srgb(const WhitePoint& wp) noexcept
{
   constexpr std::array<std::array<double, 2>, 3> primaries{
       {{0.64, 0.33}, {0.30, 0.60}, {0.15, 0.06}}};
   Mat3 p{};
   for(std::size_t c = 0; c < 3; ++c) {
      const auto [x, y] = primaries[c];
      p[0][c] = x / y;
      p[1][c] = 1.0;
      p[2][c] = (1.0 - x - y) / y;
   }
   const Vec3 w = {wp.x / wp.y, 1.0, (1.0 - wp.x - wp.y) / wp.y};
   const Vec3 s = mul(inverse(p), w);
   Mat3 rgb_to_xyz{};
   for(std::size_t r = 0; r < 3; ++r)
      for(std::size_t c = 0; c < 3; ++c) rgb_to_xyz[r][c] = p[r][c] * s[c];
   return inverse(rgb_to_xyz);
}

double srgb_encode(double v) noexcept
{
   return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

constexpr double kGamutTolerance = 1e-9;

} // namespace

std::string to_string(ColorId id) { return std::to_string(id.value); }

std::string SrgbResult::hex() const
{
   auto byte = [](double v) {
      return static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
   };
   char buf[8];
   std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(rgb.r), byte(rgb.g), byte(rgb.b));
   return buf;
}

XyY lab_to_xyY(const Lab& lab, const WhitePoint& wp)
{
   const Vec3 white = white_xyz(wp);
   const double fy = (lab.L + 16.0) / 116.0;
   const double fx = fy + lab.a / 500.0;
   const double fz = fy - lab.b / 200.0;
   const double X = white[0] * lab_f_inv(fx);
   const double Y = white[1] * lab_f_inv(fy);
   const double Z = white[2] * lab_f_inv(fz);
   const double sum = X + Y + Z;
   // Black has no chromaticity; report the white point's by convention.
   if(std::abs(sum) < 1e-300) return {wp.x, wp.y, 0.0};
   return {X / sum, Y / sum, Y};
}

Lab xyY_to_lab(const XyY& c, const WhitePoint& wp)
{
   if(c.y == 0.0 || !std::isfinite(c.y))
      fail(ErrorKind::degenerate, "degenerate chromaticity: y must be non-zero");
   const Vec3 white = white_xyz(wp);
   const double X = c.x * c.Y / c.y;
   const double Z = (1.0 - c.x - c.y) * c.Y / c.y;
   const double fx = lab_f(X / white[0]);
   const double fy = lab_f(c.Y / white[1]);
   const double fz = lab_f(Z / white[2]);
   return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Lch lab_to_lch(const Lab& lab)
{
   double h = std::atan2(lab.b, lab.a) * 180.0 / std::numbers::pi;
   if(h < 0.0) h += 360.0;
   if(h >= 360.0) h -= 360.0;
   return {lab.L, std::hypot(lab.a, lab.b), h};
}

Lab lch_to_lab(const Lch& lch)
{
   const double rad = lch.h * std::numbers::pi / 180.0;
   return {lch.L, lch.C * std::cos(rad), lch.C * std::sin(rad)};
}

SrgbResult srgb_of(const Lab& lab, const WhitePoint& wp)
{
   const Vec3 white = white_xyz(wp);
   const double fy = (lab.L + 16.0) / 116.0;
   const Vec3 xyz = {lab_f_inv(fy + lab.a / 500.0) * white[0] / wp.Y,
                     lab_f_inv(fy) * white[1] / wp.Y,
                     lab_f_inv(fy - lab.b / 200.0) * white[2] / wp.Y};
   const Vec3 linear = mul(xyz_to_linear_srgb(wp), xyz);

   SrgbResult out;
   for(double v : linear)
      if(!(v >= -kGamutTolerance && v <= 1.0 + kGamutTolerance)) out.in_gamut = false;
   auto encode = [](double v) { return srgb_encode(std::clamp(v, 0.0, 1.0)); };
   out.rgb = {encode(linear[0]), encode(linear[1]), encode(linear[2])};
   return out;
}

double delta_e(const Lab& a, const Lab& b) noexcept
{
   const double dL = a.L - b.L;
   const double da = a.a - b.a;
   const double db = a.b - b.b;
   return std::sqrt(dL * dL + da * da + db * db);
}

ColorSpec ColorSpec::from_lab(const Lab& lab, std::optional<ColorId> id, const WhitePoint& wp)
{
   return ColorSpec(id, lab, lab_to_xyY(lab, wp), wp);
}

ColorSpec ColorSpec::from_xyY(const XyY& xyY, std::optional<ColorId> id, const WhitePoint& wp)
{
   return ColorSpec(id, xyY_to_lab(xyY, wp), xyY, wp);
}

double delta_e(const ColorSpec& a, const ColorSpec& b)
{
   if(!(a.white_point() == b.white_point()))
      fail(ErrorKind::validation, "delta_e: colors use different white points");
   return delta_e(a.lab(), b.lab());
}

} // namespace semdisc
