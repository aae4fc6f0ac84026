#include "msas/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msas {

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return (next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

double Rng::normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0)
        u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
    // Marsaglia-Tsang squeeze, valid for shape >= 1
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

namespace {

constexpr double kSynthSchlickP = 5.0;

void validate_spec(const SceneSpec& s) {
    if (s.width < 64 || s.height < 64)
        throw std::invalid_argument("scene: size must be at least 64x64");
    if (s.resolution_m_per_px <= 0.0)
        throw std::invalid_argument("scene: resolution must be > 0");
    if (s.ripple_wavelength_m <= 0.0)
        throw std::invalid_argument("scene: ripple_wavelength_m must be > 0");
    if (s.ripple_amplitude < 0.0 || s.ripple_amplitude > 0.4)
        throw std::invalid_argument("scene: ripple_amplitude must be in [0, 0.4]");
    if (s.n_rocks < 0 || s.n_buried < 0)
        throw std::invalid_argument("scene: object counts must be >= 0");
    if (s.speckle_looks < 1)
        throw std::invalid_argument("scene: speckle_looks must be >= 1");
}

GrayImage downsample4(const GrayImage& f) {
    const int cw = (f.width + 3) / 4, ch = (f.height + 3) / 4;
    GrayImage out(cw, ch);
    for (int cy = 0; cy < ch; ++cy)
        for (int cx = 0; cx < cw; ++cx) {
            double acc = 0.0;
            int n = 0;
            for (int dy = 0; dy < 4; ++dy)
                for (int dx = 0; dx < 4; ++dx) {
                    const int x = 4 * cx + dx, y = 4 * cy + dy;
                    if (x < f.width && y < f.height) {
                        acc += f.at(x, y);
                        ++n;
                    }
                }
            out.at(cx, cy) = acc / n;
        }
    return out;
}

GrayImage upsample_bilinear(const GrayImage& coarse, int width, int height) {
    GrayImage out(width, height);
    for (int y = 0; y < height; ++y) {
        // coarse pixel centers sit at fine coordinates 4*cx + 1.5
        const double v = (y - 1.5) / 4.0;
        const int y0 = std::clamp(static_cast<int>(std::floor(v)), 0, coarse.height - 1);
        const int y1 = std::min(y0 + 1, coarse.height - 1);
        const double fy = std::clamp(v - y0, 0.0, 1.0);
        for (int x = 0; x < width; ++x) {
            const double u = (x - 1.5) / 4.0;
            const int x0 = std::clamp(static_cast<int>(std::floor(u)), 0, coarse.width - 1);
            const int x1 = std::min(x0 + 1, coarse.width - 1);
            const double fx = std::clamp(u - x0, 0.0, 1.0);
            const double top = coarse.at(x0, y0) * (1.0 - fx) + coarse.at(x1, y0) * fx;
            const double bot = coarse.at(x0, y1) * (1.0 - fx) + coarse.at(x1, y1) * fx;
            out.at(x, y) = top * (1.0 - fy) + bot * fy;
        }
    }
    return out;
}

struct Blob {
    double x, y, sigma_px, amplitude;
};

void add_gaussian(GrayImage& img, const Blob& b, double truncate_sigmas) {
    const int r = static_cast<int>(std::ceil(truncate_sigmas * b.sigma_px));
    const int x0 = std::max(0, static_cast<int>(b.x) - r);
    const int x1 = std::min(img.width - 1, static_cast<int>(b.x) + r);
    const int y0 = std::max(0, static_cast<int>(b.y) - r);
    const int y1 = std::min(img.height - 1, static_cast<int>(b.y) + r);
    const double inv2s2 = 1.0 / (2.0 * b.sigma_px * b.sigma_px);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - b.x, dy = y - b.y;
            img.at(x, y) += b.amplitude * std::exp(-(dx * dx + dy * dy) * inv2s2);
        }
}

} // namespace

SceneSpec vary_spec(const SceneSpec& spec_template, std::uint64_t seed) {
    Rng rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    SceneSpec s = spec_template;
    s.seed = seed;
    s.ripple_wavelength_m = rng.uniform(1.0, 3.0);
    s.ripple_amplitude = rng.uniform(0.05, 0.12);
    s.ripple_orientation_rad = rng.uniform(0.0, std::numbers::pi);
    s.n_rocks = rng.uniform_int(4, 12);
    s.n_buried = rng.uniform_int(1, 4);
    s.speckle_looks = rng.uniform_int(16, 32);
    return s;
}

Scene generate_scene(const SceneSpec& spec) {
    validate_spec(spec);
    const int w = spec.width, h = spec.height;
    const double res = spec.resolution_m_per_px;

    Rng layout(spec.seed);
    const double phase = layout.uniform(0.0, 2.0 * std::numbers::pi);
    const double kx = std::cos(spec.ripple_orientation_rad) * 2.0 * std::numbers::pi * res /
                      spec.ripple_wavelength_m;
    const double ky = std::sin(spec.ripple_orientation_rad) * 2.0 * std::numbers::pi * res /
                      spec.ripple_wavelength_m;

    GrayImage hf(w, h), lf(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = 0.5 + spec.ripple_amplitude * std::sin(kx * x + ky * y + phase);
            hf.at(x, y) = v;
            lf.at(x, y) = v;
        }

    GroundTruth truth;
    truth.lf_saliency_mask = BinaryMask(w, h);
    truth.hf_detail_mask = BinaryMask(w, h);

    // proud rocks: sharp glints plus a patch of fine texture, HF only
    for (int k = 0; k < spec.n_rocks; ++k) {
        const int margin = 8;
        const double cx = layout.uniform(margin, w - 1 - margin);
        const double cy = layout.uniform(margin, h - 1 - margin);
        const double sigma_px = layout.uniform(0.06, 0.14) / res;
        const double amp = layout.uniform(0.6, 1.0);
        const double tex_phase = layout.uniform(0.0, 2.0 * std::numbers::pi);
        add_gaussian(hf, {cx, cy, sigma_px, amp}, 3.0);
        const int r = static_cast<int>(std::ceil(3.0 * sigma_px));
        for (int y = std::max(0, (int)cy - r); y <= std::min(h - 1, (int)cy + r); ++y)
            for (int x = std::max(0, (int)cx - r); x <= std::min(w - 1, (int)cx + r); ++x) {
                const double dx = x - cx, dy = y - cy;
                const double env = std::exp(-(dx * dx + dy * dy) / (2.0 * 4.0 * sigma_px * sigma_px));
                hf.at(x, y) += 0.2 * amp * env * std::cos(2.0 * std::numbers::pi * (x + y) / 3.0 + tex_phase);
                if (amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_px * sigma_px)) >= 0.08)
                    truth.hf_detail_mask.at(x, y) = 1;
            }
    }

    // buried targets: smooth bright blobs, LF only, kept pairwise disjoint
    std::vector<Blob> buried;
    for (int k = 0; k < spec.n_buried; ++k) {
        const double sigma_px = layout.uniform(0.4, 0.7) / res;
        const double amp = layout.uniform(1.8, 2.4);
        const double margin = 3.0 * sigma_px + 4.0;
        double cx = 0.0, cy = 0.0;
        bool placed = false;
        for (int tries = 0; tries < 1000 && !placed; ++tries) {
            cx = layout.uniform(margin, w - 1 - margin);
            cy = layout.uniform(margin, h - 1 - margin);
            placed = true;
            for (const Blob& other : buried) {
                const double min_dist = 2.0 * (sigma_px + other.sigma_px) + 4.0;
                if (std::hypot(cx - other.x, cy - other.y) < min_dist) {
                    placed = false;
                    break;
                }
            }
        }
        buried.push_back({cx, cy, sigma_px, amp});
    }
    for (const Blob& b : buried) {
        add_gaussian(lf, b, 3.0);
        const double thresh = b.amplitude * std::exp(-2.0); // within 2 sigma
        const int r = static_cast<int>(std::ceil(2.0 * b.sigma_px));
        for (int y = std::max(0, (int)b.y - r); y <= std::min(h - 1, (int)b.y + r); ++y)
            for (int x = std::max(0, (int)b.x - r); x <= std::min(w - 1, (int)b.x + r); ++x) {
                const double dx = x - b.x, dy = y - b.y;
                const double v = b.amplitude *
                                 std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma_px * b.sigma_px));
                if (v >= thresh)
                    truth.lf_saliency_mask.at(x, y) = 1;
            }
    }

    // band-dependent resolution: LF lives two octaves coarser
    lf = upsample_bilinear(downsample4(lf), w, h);

    // multiplicative gamma speckle, independent per band
    Rng speckle_hf(spec.seed ^ 0x5deece66d1ce4e5bULL);
    Rng speckle_lf(spec.seed ^ 0x2545f4914f6cdd1dULL);
    const double looks = static_cast<double>(spec.speckle_looks);
    for (double& v : hf.data)
        v *= speckle_hf.gamma(looks) / looks;
    for (double& v : lf.data)
        v *= speckle_lf.gamma(looks) / looks;

    // same conditioning the fusion pipeline expects of real imagery
    hf = drc_schlick(normalize(hf), kSynthSchlickP);
    lf = drc_schlick(normalize(lf), kSynthSchlickP);

    Scene scene;
    scene.pair = {std::move(hf), std::move(lf), res};
    scene.truth = std::move(truth);
    scene.spec = spec;
    return scene;
}

std::vector<Scene> generate_corpus(int n, std::uint64_t base_seed, const SceneSpec& spec_template) {
    if (n < 1)
        throw std::invalid_argument("generate_corpus: n must be >= 1");
    std::vector<Scene> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(generate_scene(vary_spec(spec_template, base_seed + i)));
    return out;
}

} // namespace msas
