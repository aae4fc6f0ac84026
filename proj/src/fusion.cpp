#include "msas/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace msas {

namespace {

void check_pair(const ImagePair& pair) {
    if (!pair.hf.same_size(pair.lf))
        throw std::invalid_argument("fusion: HF and LF dimensions differ");
    if (pair.resolution_m_per_px <= 0.0)
        throw std::invalid_argument("fusion: resolution must be > 0");
}

double median_lstar(const GrayImage& lum) {
    std::vector<double> v(lum.data);
    auto mid = v.begin() + v.size() / 2;
    std::nth_element(v.begin(), mid, v.end());
    return 100.0 * std::clamp(*mid, 0.0, 1.0);
}

// Colors one luminance image: per-pixel Lab point from the saliency hue
// sweep, converted under the configured gamut strategy.
RgbImage render_cielab(const GrayImage& lum, const SaliencyMap& s_hue, const FusionConfig& cfg,
                       double c_a, double c_b) {
    const GamutTable& table = GamutTable::instance();
    RgbImage out(lum.width, lum.height);
    for (std::size_t i = 0; i < lum.data.size(); ++i) {
        const double L = 100.0 * std::clamp(lum.data[i], 0.0, 1.0);
        const double s = std::clamp(s_hue.data[i], 0.0, 1.0);
        double ca = c_a, cb = c_b;
        if (cfg.gamut == GamutStrategy::restricted) {
            const auto [ta, tb] = table.bounds(L);
            ca = std::min(ca, ta);
            cb = std::min(cb, tb);
        }
        const auto [a, b] = hue_from_saliency(s, ca, cb, cfg.hue_0, cfg.hue_1);
        const LabPixel lab{L, a, b};
        out.data[i] = cfg.gamut == GamutStrategy::chroma_scale ? lab_to_srgb_chroma_scaled(lab)
                                                               : lab_to_srgb_clipped(lab);
    }
    return out;
}

} // namespace

void validate(const FusionConfig& cfg) {
    if (cfg.alpha_cfar_cielab < 0.0 || cfg.alpha_dual < 0.0)
        throw std::invalid_argument("config: alphas must be >= 0");
    if (cfg.boxcar_extent_m <= 0.0)
        throw std::invalid_argument("config: boxcar_extent_m must be > 0");
    const double half_pi = std::numbers::pi / 2.0 + 1e-12;
    if (cfg.hue_0 < -half_pi || cfg.hue_0 > 0.0 || cfg.hue_1 < -half_pi || cfg.hue_1 > 0.0)
        throw std::invalid_argument("config: hues must lie in [-pi/2, 0]");
    for (const auto& c : {cfg.chroma_0, cfg.chroma_a, cfg.chroma_b})
        if (c && *c < 0.0)
            throw std::invalid_argument("config: chroma bounds must be >= 0");
    if (cfg.resolution_m_per_px <= 0.0)
        throw std::invalid_argument("config: resolution_m_per_px must be > 0");
    if (cfg.schlick_p < 1.0)
        throw std::invalid_argument("config: schlick_p must be >= 1");
}

GrayImage luminance_supremum(const GrayImage& a, const GrayImage& b) {
    if (!a.same_size(b))
        throw std::invalid_argument("luminance_supremum: dimension mismatch");
    GrayImage out(a.width, a.height);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        out.data[i] = std::max(a.data[i], b.data[i]);
    return out;
}

std::pair<double, double> hue_from_saliency(double s, double c_a, double c_b, double hue_0,
                                            double hue_1) {
    const double angle = hue_0 + s * (hue_1 - hue_0);
    return {std::cos(angle) * c_a, std::sin(angle) * c_b};
}

double nonlinear_mapper(double s_hf, double s_lf) {
    return 1.0 - s_lf * (1.0 - s_hf);
}

GrayImage blend_luminance(const GrayImage& hf, const GrayImage& lf, const GrayImage& w) {
    if (!hf.same_size(lf) || !hf.same_size(w))
        throw std::invalid_argument("blend_luminance: dimension mismatch");
    GrayImage out(hf.width, hf.height);
    for (std::size_t i = 0; i < hf.data.size(); ++i)
        out.data[i] = hf.data[i] * w.data[i] + lf.data[i] * (1.0 - w.data[i]);
    return out;
}

RgbImage fuse_cfar_cielab(const ImagePair& pair, const FusionConfig& cfg) {
    check_pair(pair);
    validate(cfg);
    const SaliencyMap s_raw = cfar_saliency(
        pair.lf, {cfg.alpha_cfar_cielab, cfg.boxcar_extent_m}, pair.resolution_m_per_px);
    const GrayImage lum = luminance_supremum(s_raw, pair.hf);

    // hue sweep wants "completely salient" = 1, so rescale by the map max
    SaliencyMap s_hue = s_raw;
    const double smax = *std::max_element(s_raw.data.begin(), s_raw.data.end());
    if (smax > 0.0)
        for (double& v : s_hue.data)
            v /= smax;

    double c0;
    if (cfg.chroma_0) {
        c0 = *cfg.chroma_0;
    } else {
        const auto [ca, cb] = GamutTable::instance().bounds(median_lstar(lum));
        c0 = std::min(ca, cb);
    }
    // equal per-axis bounds keep the pre-conversion chroma exactly constant
    return render_cielab(lum, s_hue, cfg, c0, c0);
}

RgbImage fuse_surf_cielab(const ImagePair& pair, const FusionConfig& cfg) {
    check_pair(pair);
    validate(cfg);
    const SaliencyMap s_hf = surf_density_saliency(pair.hf, cfg.surf, pair.resolution_m_per_px);
    const SaliencyMap s_lf = surf_density_saliency(pair.lf, cfg.surf, pair.resolution_m_per_px);

    GrayImage w(pair.hf.width, pair.hf.height);
    for (std::size_t i = 0; i < w.data.size(); ++i)
        w.data[i] = nonlinear_mapper(s_hf.data[i], s_lf.data[i]);
    const GrayImage lum = blend_luminance(pair.hf, pair.lf, w);

    double ca, cb;
    if (cfg.chroma_a && cfg.chroma_b) {
        ca = *cfg.chroma_a;
        cb = *cfg.chroma_b;
    } else {
        const auto [ta, tb] = GamutTable::instance().bounds(median_lstar(lum));
        ca = cfg.chroma_a.value_or(ta);
        cb = cfg.chroma_b.value_or(tb);
    }
    return render_cielab(lum, s_lf, cfg, ca, cb);
}

RgbImage fuse_dual_colormap(const ImagePair& pair, const FusionConfig& cfg,
                            const Colormap& cmap_hf, const Colormap& cmap_lf) {
    check_pair(pair);
    validate(cfg);
    const GrayImage lum = luminance_supremum(pair.hf, pair.lf);
    const SaliencyMap s =
        cfar_saliency(pair.lf, {cfg.alpha_dual, cfg.boxcar_extent_m}, pair.resolution_m_per_px);
    RgbImage out(lum.width, lum.height);
    for (std::size_t i = 0; i < lum.data.size(); ++i) {
        const int t = std::clamp(
            static_cast<int>(std::floor(std::clamp(lum.data[i], 0.0, 1.0) * 255.0 + 0.5)), 0, 255);
        out.data[i] = s.data[i] > 0.0 ? cmap_lf.entries[t] : cmap_hf.entries[t];
    }
    return out;
}

} // namespace msas
