#pragma once

#include "msas/image.hpp"

namespace msas {

// Similarity of one fused image's perceptual luminance against each source
// band, plus the band-vs-band baseline.
struct MetricsReport {
    double ssim_hf = 0.0;
    double ssim_lf = 0.0;
    double ncc_hf = 0.0;
    double ncc_lf = 0.0;
    double mse_hf = 0.0;
    double mse_lf = 0.0;
    double baseline_ssim = 0.0;
    double baseline_ncc = 0.0;
    double baseline_mse = 0.0;
};

// Perceptually linear grayscale of a color image: L*/100 per pixel.
GrayImage fused_to_perceptual_gray(const RgbImage& img);

// Normalized cross correlation with population moments; a constant input
// (zero variance) reports 0 with a warning.
double ncc(const GrayImage& f, const GrayImage& g);

// Mean of squared differences.
double mse(const GrayImage& f, const GrayImage& g);

// Single global structural similarity statistic over whole-image population
// moments, stabilized with c1 = 0.01^2, c2 = 0.03^2 for unit dynamic range.
double ssim_global(const GrayImage& f, const GrayImage& g);

// All three metrics for (fused, HF), (fused, LF) and the (HF, LF) baseline.
MetricsReport evaluate_pair(const ImagePair& pair, const RgbImage& fused);

} // namespace msas
