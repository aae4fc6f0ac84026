#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace msas {

// Row-major raster of real intensities. Fusion inputs are expected to be
// normalized to [0,1]; the container itself does not enforce a range.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(check_dims(w, h), fill) {}

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t size() const { return data.size(); }
    bool same_size(const GrayImage& o) const { return width == o.width && height == o.height; }

    static std::size_t check_dims(int w, int h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("GrayImage: width and height must be >= 1");
        return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    }
};

// Nonlinear (display-encoded) sRGB components. In-gamut iff all in [0,1].
struct RgbPixel {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<RgbPixel> data;

    RgbImage() = default;
    RgbImage(int w, int h, RgbPixel fill = {})
        : width(w), height(h), data(GrayImage::check_dims(w, h), fill) {}

    RgbPixel& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    RgbPixel at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t size() const { return data.size(); }
};

// Co-registered high/low frequency pair covering the same patch of seafloor.
struct ImagePair {
    GrayImage hf;
    GrayImage lf;
    double resolution_m_per_px = 0.05;
};

// Affine rescale to [0,1]. A constant image maps to all zeros.
GrayImage normalize(const GrayImage& img);

// Rational dynamic range compression x -> p*x / (p*x - x + 1) for p >= 1.
// Identity at p = 1, fixes 0 and 1, strictly monotone on (0,1).
GrayImage drc_schlick(const GrayImage& img, double p);

} // namespace msas
