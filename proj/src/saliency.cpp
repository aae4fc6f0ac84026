#include "msas/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

namespace msas {

IntegralImage::IntegralImage(const GrayImage& img)
    : width_(img.width), height_(img.height),
      sums_(static_cast<std::size_t>(img.width + 1) * (img.height + 1), 0.0) {
    const int w1 = width_ + 1;
    for (int y = 0; y < height_; ++y) {
        double row = 0.0;
        for (int x = 0; x < width_; ++x) {
            row += img.at(x, y);
            sums_[static_cast<std::size_t>(y + 1) * w1 + (x + 1)] =
                sums_[static_cast<std::size_t>(y) * w1 + (x + 1)] + row;
        }
    }
}

double IntegralImage::box_sum(int x0, int y0, int x1, int y1) const {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, width_ - 1);
    y1 = std::min(y1, height_ - 1);
    if (x0 > x1 || y0 > y1)
        return 0.0;
    const int w1 = width_ + 1;
    const auto s = [&](int x, int y) { return sums_[static_cast<std::size_t>(y) * w1 + x]; };
    return s(x1 + 1, y1 + 1) - s(x0, y1 + 1) - s(x1 + 1, y0) + s(x0, y0);
}

namespace {

GrayImage replicate_pad(const GrayImage& f, int pad) {
    GrayImage out(f.width + 2 * pad, f.height + 2 * pad);
    for (int y = 0; y < out.height; ++y) {
        const int sy = std::clamp(y - pad, 0, f.height - 1);
        for (int x = 0; x < out.width; ++x)
            out.at(x, y) = f.at(std::clamp(x - pad, 0, f.width - 1), sy);
    }
    return out;
}

} // namespace

GrayImage boxcar_background(const GrayImage& f, double extent_m, double res_m_per_px) {
    if (extent_m <= 0.0 || res_m_per_px <= 0.0)
        throw std::invalid_argument("boxcar_background: extent and resolution must be > 0");
    int w = static_cast<int>(std::lround(extent_m / res_m_per_px));
    if (w % 2 == 0)
        ++w;
    w = std::max(w, 3);
    int max_w = std::min(f.width, f.height);
    if (max_w % 2 == 0)
        --max_w;
    if (w > max_w) {
        std::cerr << "msas: warning: boxcar window " << w << " px exceeds image, clamped to "
                  << max_w << " px\n";
        w = max_w;
    }
    const int r = w / 2;
    // integrate relative to a reference level so constant regions stay
    // exactly constant through the summed-area table
    const double ref = f.at(0, 0);
    GrayImage padded = replicate_pad(f, r);
    for (double& v : padded.data)
        v -= ref;
    const IntegralImage sat(padded);
    const double inv = 1.0 / (static_cast<double>(w) * w);
    GrayImage out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            out.at(x, y) = sat.box_sum(x, y, x + 2 * r, y + 2 * r) * inv + ref;
    return out;
}

SaliencyMap cfar_saliency(const GrayImage& f, const CfarParams& params, double res_m_per_px) {
    const GrayImage bg = boxcar_background(f, params.boxcar_extent_m, res_m_per_px);
    SaliencyMap s(f.width, f.height);
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double d = f.data[i] - bg.data[i];
        s.data[i] = d > params.alpha ? d : 0.0;
    }
    return s;
}

GrayImage despeckle(const GrayImage& f, int window) {
    if (window % 2 == 0)
        throw std::invalid_argument("despeckle: window must be odd");
    if (window < 3)
        throw std::invalid_argument("despeckle: window must be >= 3");
    const int r = window / 2;
    GrayImage out(f.width, f.height);
    std::vector<double> buf(static_cast<std::size_t>(window) * window);
    for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
            std::size_t n = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = std::clamp(y + dy, 0, f.height - 1);
                for (int dx = -r; dx <= r; ++dx)
                    buf[n++] = f.at(std::clamp(x + dx, 0, f.width - 1), sy);
            }
            auto mid = buf.begin() + n / 2;
            std::nth_element(buf.begin(), mid, buf.begin() + n);
            out.at(x, y) = *mid;
        }
    }
    return out;
}

GrayImage gaussian_blur(const GrayImage& f, double sigma_px) {
    if (sigma_px <= 0.0)
        return f;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma_px)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma_px * sigma_px));
        sum += kernel[i + radius];
    }
    for (double& k : kernel)
        k /= sum;

    GrayImage tmp(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * f.at(std::clamp(x + i, 0, f.width - 1), y);
            tmp.at(x, y) = acc;
        }
    GrayImage out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp.at(x, std::clamp(y + i, 0, f.height - 1));
            out.at(x, y) = acc;
        }
    return out;
}

namespace {

void validate_surf_params(const SurfParams& p) {
    if (p.hessian_threshold <= 0.0)
        throw std::invalid_argument("surf: hessian_threshold must be > 0");
    if (p.octave_filter_sizes.size() < 3)
        throw std::invalid_argument("surf: need at least 3 filter sizes");
    int prev = 0;
    for (int L : p.octave_filter_sizes) {
        if (L % 2 == 0 || L % 3 != 0)
            throw std::invalid_argument("surf: filter sizes must be odd multiples of 3");
        if (L <= prev)
            throw std::invalid_argument("surf: filter sizes must be increasing");
        prev = L;
    }
    if (p.despeckle_window % 2 == 0 || p.despeckle_window < 3)
        throw std::invalid_argument("surf: despeckle_window must be odd and >= 3");
    if (p.density_sigma_m <= 0.0)
        throw std::invalid_argument("surf: density_sigma_m must be > 0");
}

// Box-filter second derivatives normalized by filter area; zero within
// (L-1)/2 of the border where the filter does not fit.
GrayImage fast_hessian_response(const IntegralImage& sat, int L) {
    const int l = L / 3;
    const int m = (L - 1) / 2;
    const int hl = (l - 1) / 2;
    const double inv_area = 1.0 / (static_cast<double>(L) * L);
    GrayImage resp(sat.width(), sat.height(), 0.0);
    for (int y = m; y < sat.height() - m; ++y) {
        for (int x = m; x < sat.width() - m; ++x) {
            const double dyy = sat.box_sum(x - l + 1, y - m, x + l - 1, y + m) -
                               3.0 * sat.box_sum(x - l + 1, y - hl, x + l - 1, y + hl);
            const double dxx = sat.box_sum(x - m, y - l + 1, x + m, y + l - 1) -
                               3.0 * sat.box_sum(x - hl, y - l + 1, x + hl, y + l - 1);
            const double dxy = sat.box_sum(x + 1, y - l, x + l, y - 1) +
                               sat.box_sum(x - l, y + 1, x - 1, y + l) -
                               sat.box_sum(x - l, y - l, x - 1, y - 1) -
                               sat.box_sum(x + 1, y + 1, x + l, y + l);
            const double nxx = dxx * inv_area;
            const double nyy = dyy * inv_area;
            const double nxy = dxy * inv_area;
            resp.at(x, y) = nxx * nyy - 0.81 * nxy * nxy;
        }
    }
    return resp;
}

} // namespace

std::vector<Keypoint> surf_interest_points(const GrayImage& f, const SurfParams& params) {
    validate_surf_params(params);
    const int min_dim = std::min(f.width, f.height);
    std::vector<int> sizes;
    for (int L : params.octave_filter_sizes)
        if (L <= min_dim)
            sizes.push_back(L);
    if (sizes.size() < 3) {
        std::cerr << "msas: warning: image " << f.width << "x" << f.height
                  << " too small for the configured filters, no keypoints\n";
        return {};
    }

    const IntegralImage sat(f);
    std::vector<GrayImage> layers;
    layers.reserve(sizes.size());
    for (int L : sizes)
        layers.push_back(fast_hessian_response(sat, L));

    std::vector<Keypoint> kps;
    for (std::size_t si = 1; si + 1 < sizes.size(); ++si) {
        // stay inside the widest neighbor layer's valid region
        const int m = (sizes[si + 1] - 1) / 2 + 1;
        for (int y = m; y < f.height - m; ++y) {
            for (int x = m; x < f.width - m; ++x) {
                const double v = layers[si].at(x, y);
                if (v <= params.hessian_threshold)
                    continue;
                bool is_max = true;
                for (std::size_t ds = si - 1; ds <= si + 1 && is_max; ++ds)
                    for (int dy = -1; dy <= 1 && is_max; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            if (ds == si && dy == 0 && dx == 0)
                                continue;
                            if (layers[ds].at(x + dx, y + dy) >= v) {
                                is_max = false;
                                break;
                            }
                        }
                if (is_max)
                    kps.push_back({static_cast<double>(x), static_cast<double>(y),
                                   1.2 * sizes[si] / 9.0, v});
            }
        }
    }
    return kps;
}

SaliencyMap keypoint_density(const std::vector<Keypoint>& kps, int width, int height) {
    SaliencyMap d(width, height, 0.0);
    for (const Keypoint& kp : kps) {
        const int x = std::clamp(static_cast<int>(std::lround(kp.x)), 0, width - 1);
        const int y = std::clamp(static_cast<int>(std::lround(kp.y)), 0, height - 1);
        d.at(x, y) += 1.0;
    }
    return d;
}

SaliencyMap surf_density_saliency(const GrayImage& f, const SurfParams& params,
                                  double res_m_per_px) {
    if (res_m_per_px <= 0.0)
        throw std::invalid_argument("surf_density_saliency: resolution must be > 0");
    const GrayImage clean = despeckle(f, params.despeckle_window);
    const std::vector<Keypoint> kps = surf_interest_points(clean, params);
    if (kps.empty())
        return SaliencyMap(f.width, f.height, 0.0);
    SaliencyMap d = keypoint_density(kps, f.width, f.height);
    d = gaussian_blur(d, params.density_sigma_m / res_m_per_px);
    const double mx = *std::max_element(d.data.begin(), d.data.end());
    if (mx > 0.0)
        for (double& v : d.data)
            v /= mx;
    return d;
}

void write_keypoints_csv(const std::vector<Keypoint>& kps, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp)
        throw std::runtime_error("cannot write file: " + path);
    std::fprintf(fp, "x,y,scale,strength\n");
    for (const Keypoint& kp : kps)
        std::fprintf(fp, "%.9g,%.9g,%.9g,%.9g\n", kp.x, kp.y, kp.scale, kp.strength);
    std::fclose(fp);
}

} // namespace msas
