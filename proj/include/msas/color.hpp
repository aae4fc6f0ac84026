#pragma once

#include <array>
#include <string>
#include <utility>

#include "msas/image.hpp"

namespace msas {

// CIELAB coordinates (D65 white). L in [0,100] for displayable colors;
// a (green-red) and b (blue-yellow) are unbounded opponent axes.
struct LabPixel {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;
};

double chroma(const LabPixel& p); // sqrt(a^2 + b^2)
double hue(const LabPixel& p);    // atan2(b, a)

// Standard sRGB (IEC 61966-2-1) decode -> linear -> XYZ (D65) -> Lab.
LabPixel srgb_to_lab(const RgbPixel& p);

// Exact inverse of srgb_to_lab followed by clamping each nonlinear
// component to [0,1] (gamut clipping).
RgbPixel lab_to_srgb_clipped(const LabPixel& p);

// Holds L and hue fixed, shrinks chroma by the largest scale in [0,1]
// that lands inside the sRGB gamut (binary search, tolerance 1e-3), then
// converts. Identity on in-gamut inputs.
RgbPixel lab_to_srgb_chroma_scaled(const LabPixel& p);

// True iff the Lab point maps to linear RGB with every channel in [0,1].
bool in_srgb_gamut(const LabPixel& p);

// Largest per-axis chroma bounds (C_a, C_b) such that the whole
// fourth-quadrant sweep {(C_a cos t, -C_b sin t) : t in [0, pi/2]} stays
// inside sRGB at this lightness. Scans hue in 1-degree steps and
// binary-searches each ray; the admissible scale is the minimum over rays.
std::pair<double, double> max_chroma_fourth_quadrant(double L_star);

// 1024-entry cache of max_chroma_fourth_quadrant over L* in [0,100],
// linearly interpolated. Built once on first use.
class GamutTable {
public:
    static const GamutTable& instance();
    std::pair<double, double> bounds(double L_star) const;

private:
    GamutTable();
    static constexpr int kSize = 1024;
    std::array<double, kSize> ca_{};
    std::array<double, kSize> cb_{};
};

// 256-entry sRGB lookup table with monotone, (near-)linear L* along the
// index: |L*(entries[t]) - 100 t/255| <= 2.
struct Colormap {
    std::array<RgbPixel, 256> entries;
};

// Neutral ramp, exactly linear in L*: entry t = Lab(100 t/255, 0, 0).
Colormap make_linear_gray_colormap();

// Classic hot ramp (black-red-yellow-white) resampled along its own
// cumulative L* so the table is linearly luminant.
Colormap make_linear_hot_colormap();

// CSV rows "t,r,g,b" with 8-bit channel values, one per entry.
void write_colormap_csv(const Colormap& map, const std::string& path);

} // namespace msas
