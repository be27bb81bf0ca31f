#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

namespace semdisc {

/// Dataset index of a color (UW-58 number for the bundled set).
struct ColorId
{
   int value = 0;

   friend constexpr auto operator<=>(ColorId, ColorId) = default;
};

std::string to_string(ColorId id);

struct Lab
{
   double L = 0.0;
   double a = 0.0;
   double b = 0.0;

   friend constexpr bool operator==(const Lab&, const Lab&) = default;
};

struct XyY
{
   double x = 0.0;
   double y = 0.0;
   double Y = 0.0;

   friend constexpr bool operator==(const XyY&, const XyY&) = default;
};

/// Cylindrical CIELAB; hue in degrees, [0, 360).
struct Lch
{
   double L = 0.0;
   double C = 0.0;
   double h = 0.0;
};

/// Gamma-encoded sRGB in [0,1].
struct Rgb
{
   double r = 0.0;
   double g = 0.0;
   double b = 0.0;
};

struct SrgbResult
{
   Rgb rgb;               // clamped to [0,1]
   bool in_gamut = true;  // false if any channel was outside [0,1] before clamping

   std::string hex() const; // "#rrggbb"
};

/// Reference white as chromaticity plus luminance. Y is the luminance that
/// maps to L* = 100.
struct WhitePoint
{
   double x = 0.3127;
   double y = 0.3290;
   double Y = 100.0;

   friend constexpr bool operator==(const WhitePoint&, const WhitePoint&) = default;
};

inline constexpr WhitePoint d65{};

XyY lab_to_xyY(const Lab& lab, const WhitePoint& wp = d65);

/// Throws Error(degenerate) when y == 0.
Lab xyY_to_lab(const XyY& xyY, const WhitePoint& wp = d65);

Lch lab_to_lch(const Lab& lab);
Lab lch_to_lab(const Lch& lch);

SrgbResult srgb_of(const Lab& lab, const WhitePoint& wp = d65);

/// CIE76 color difference.
double delta_e(const Lab& a, const Lab& b) noexcept;

class ColorSpec
{
 public:
   static ColorSpec from_lab(const Lab& lab,
                             std::optional<ColorId> id = std::nullopt,
                             const WhitePoint& wp = d65);
   static ColorSpec from_xyY(const XyY& xyY,
                             std::optional<ColorId> id = std::nullopt,
                             const WhitePoint& wp = d65);

   const std::optional<ColorId>& id() const noexcept { return id_; }
   const Lab& lab() const noexcept { return lab_; }
   const XyY& xyY() const noexcept { return xyY_; }
   const WhitePoint& white_point() const noexcept { return wp_; }
   Lch lch() const { return lab_to_lch(lab_); }
   SrgbResult srgb() const { return srgb_of(lab_, wp_); }

 private:
   ColorSpec(std::optional<ColorId> id, Lab lab, XyY xyY, WhitePoint wp)
       : id_(id)
       , lab_(lab)
       , xyY_(xyY)
       , wp_(wp)
   {}

   std::optional<ColorId> id_;
   Lab lab_;
   XyY xyY_;
   WhitePoint wp_;
};

/// Throws Error(validation) if the colors use different white points.
double delta_e(const ColorSpec& a, const ColorSpec& b);

} // namespace semdisc

template<> struct std::hash<semdisc::ColorId>
{
   std::size_t operator()(semdisc::ColorId id) const noexcept
   {
      return std::hash<int>{}(id.value);
   }
};
