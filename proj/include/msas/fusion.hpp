#pragma once

#include <numbers>
#include <optional>
#include <utility>

#include "msas/color.hpp"
#include "msas/image.hpp"
#include "msas/saliency.hpp"

namespace msas {

// How Lab points are brought into the sRGB gamut before conversion.
//   restricted   - chroma bounds are limited per pixel by the precomputed
//                  fourth-quadrant table at that pixel's L*, so conversion
//                  is luminance-exact (default)
//   chroma_scale - per-pixel binary-search chroma shrink, also luminance-exact
//   clip         - requested chroma kept, out-of-gamut channels clamped;
//                  can distort L* at lightness extremes
enum class GamutStrategy { restricted, chroma_scale, clip };

struct FusionConfig {
    double alpha_cfar_cielab = 0.0; // saliency threshold, CFAR-CIELAB scheme
    double alpha_dual = 0.5;        // saliency threshold, dual-colormap scheme
    double boxcar_extent_m = 5.0;   // background estimation window, meters

    // Chroma bounds. Unset values default to the fourth-quadrant gamut
    // bound at the luminance image's median L*: chroma_0 (used on both axes
    // by the CFAR scheme) takes the smaller of the pair; chroma_a/chroma_b
    // (SURF scheme) take the pair as-is.
    std::optional<double> chroma_0;
    std::optional<double> chroma_a;
    std::optional<double> chroma_b;

    // Hue sweep endpoints in radians, fourth quadrant of the a-b plane:
    // hue_0 colors zero saliency, hue_1 full saliency.
    double hue_0 = -std::numbers::pi / 2.0;
    double hue_1 = 0.0;

    SurfParams surf;
    double resolution_m_per_px = 0.05;
    double schlick_p = 5.0; // dynamic range compression strength
    GamutStrategy gamut = GamutStrategy::restricted;
};

void validate(const FusionConfig& cfg);

// Elementwise maximum of two equally sized images.
GrayImage luminance_supremum(const GrayImage& a, const GrayImage& b);

// Sweeps hue from hue_0 (s=0) to hue_1 (s=1) along the quarter ellipse with
// per-axis chroma bounds: angle = hue_0 + s*(hue_1 - hue_0),
// (a, b) = (cos(angle)*c_a, sin(angle)*c_b).
std::pair<double, double> hue_from_saliency(double s, double c_a, double c_b,
                                            double hue_0 = -std::numbers::pi / 2.0,
                                            double hue_1 = 0.0);

// Weight of the HF band in the luminance blend: w = 1 - s_lf*(1 - s_hf).
// Luminance follows HF unless the LF pixel is salient and the HF pixel is
// not: w(.,0) = 1, w(1,.) = 1, w(0,1) = 0.
double nonlinear_mapper(double s_hf, double s_lf);

// Pixelwise hf*w + lf*(1-w).
GrayImage blend_luminance(const GrayImage& hf, const GrayImage& lf, const GrayImage& w);

// Luminance = sup(LF background-subtraction saliency, HF); hue from the
// max-rescaled saliency at fixed chroma.
RgbImage fuse_cfar_cielab(const ImagePair& pair, const FusionConfig& cfg);

// Luminance = saliency-weighted blend of the bands; hue from the LF
// feature-density map.
RgbImage fuse_surf_cielab(const ImagePair& pair, const FusionConfig& cfg);

// Luminance = sup(HF, LF) rendered through one of two linearly luminant
// colormaps, chosen per pixel by whether the LF saliency metric fired.
RgbImage fuse_dual_colormap(const ImagePair& pair, const FusionConfig& cfg,
                            const Colormap& cmap_hf, const Colormap& cmap_lf);

} // namespace msas
