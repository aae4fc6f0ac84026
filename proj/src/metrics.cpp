#include "msas/metrics.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "msas/color.hpp"

namespace msas {

namespace {

void check_same(const GrayImage& f, const GrayImage& g, const char* who) {
    if (!f.same_size(g))
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

struct Moments {
    double mean_f = 0.0, mean_g = 0.0;
    double var_f = 0.0, var_g = 0.0; // population variances
    double cov = 0.0;
};

Moments moments(const GrayImage& f, const GrayImage& g) {
    const double n = static_cast<double>(f.data.size());
    Moments m;
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        m.mean_f += f.data[i];
        m.mean_g += g.data[i];
    }
    m.mean_f /= n;
    m.mean_g /= n;
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double df = f.data[i] - m.mean_f;
        const double dg = g.data[i] - m.mean_g;
        m.var_f += df * df;
        m.var_g += dg * dg;
        m.cov += df * dg;
    }
    m.var_f /= n;
    m.var_g /= n;
    m.cov /= n;
    return m;
}

} // namespace

GrayImage fused_to_perceptual_gray(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = srgb_to_lab(img.data[i]).L / 100.0;
    return out;
}

double ncc(const GrayImage& f, const GrayImage& g) {
    check_same(f, g, "ncc");
    const Moments m = moments(f, g);
    const double sf = std::sqrt(m.var_f), sg = std::sqrt(m.var_g);
    if (sf <= 0.0 || sg <= 0.0) {
        std::cerr << "msas: warning: ncc of a constant image is undefined, reporting 0\n";
        return 0.0;
    }
    return m.cov / (sf * sg);
}

double mse(const GrayImage& f, const GrayImage& g) {
    check_same(f, g, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double d = g.data[i] - f.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(f.data.size());
}

double ssim_global(const GrayImage& f, const GrayImage& g) {
    check_same(f, g, "ssim_global");
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    const Moments m = moments(f, g);
    const double num = (2.0 * m.mean_f * m.mean_g + c1) * (2.0 * m.cov + c2);
    const double den =
        (m.mean_f * m.mean_f + m.mean_g * m.mean_g + c1) * (m.var_f + m.var_g + c2);
    return num / den;
}

MetricsReport evaluate_pair(const ImagePair& pair, const RgbImage& fused) {
    if (!pair.hf.same_size(pair.lf))
        throw std::invalid_argument("evaluate_pair: HF and LF dimensions differ");
    if (fused.width != pair.hf.width || fused.height != pair.hf.height)
        throw std::invalid_argument("evaluate_pair: fused image dimensions differ from pair");
    const GrayImage gray = fused_to_perceptual_gray(fused);
    MetricsReport r;
    r.ssim_hf = ssim_global(gray, pair.hf);
    r.ssim_lf = ssim_global(gray, pair.lf);
    r.ncc_hf = ncc(gray, pair.hf);
    r.ncc_lf = ncc(gray, pair.lf);
    r.mse_hf = mse(gray, pair.hf);
    r.mse_lf = mse(gray, pair.lf);
    r.baseline_ssim = ssim_global(pair.hf, pair.lf);
    r.baseline_ncc = ncc(pair.hf, pair.lf);
    r.baseline_mse = mse(pair.hf, pair.lf);
    return r;
}

} // namespace msas
