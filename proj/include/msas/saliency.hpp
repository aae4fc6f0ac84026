#pragma once

#include <string>
#include <vector>

#include "msas/image.hpp"

namespace msas {

// Per-pixel spatial saliency for one band. Background-subtraction maps are
// nonnegative and zero below threshold; feature-density maps are in [0,1].
using SaliencyMap = GrayImage;

struct CfarParams {
    double alpha = 0.0;          // saliency threshold on f - background
    double boxcar_extent_m = 5.0; // side of the background mean window, meters
};

struct SurfParams {
    double hessian_threshold = 1e-4;                  // on [0,1]-scaled intensities
    std::vector<int> octave_filter_sizes = {9, 15, 21, 27}; // box side lengths, px
    double density_sigma_m = 1.0;                     // density smoothing, meters
    int despeckle_window = 3;                         // median window, odd px
};

struct Keypoint {
    double x = 0.0;
    double y = 0.0;        // pixel coordinates
    double scale = 0.0;    // equivalent Gaussian sigma, px
    double strength = 0.0; // Hessian determinant response
};

// Summed-area table. box_sum takes inclusive pixel coordinates and clamps
// them to the image, so partially outside boxes sum their overlap.
class IntegralImage {
public:
    explicit IntegralImage(const GrayImage& img);
    double box_sum(int x0, int y0, int x1, int y1) const;
    int width() const { return width_; }
    int height() const { return height_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> sums_; // (width+1) x (height+1)
};

// Mean filter with square window of side round(extent_m/res), forced odd
// (minimum 3), edge replication. Windows wider than the image are clamped
// to the image with a warning.
GrayImage boxcar_background(const GrayImage& f, double extent_m, double res_m_per_px);

// s = f - background where that difference strictly exceeds alpha, else 0.
SaliencyMap cfar_saliency(const GrayImage& f, const CfarParams& params, double res_m_per_px);

// Median filter, odd window >= 3, edge replication.
GrayImage despeckle(const GrayImage& f, int window);

// Separable Gaussian, kernel truncated at 3 sigma, edge replication.
GrayImage gaussian_blur(const GrayImage& f, double sigma_px);

// Fast-Hessian box-filter detector: det = Dxx*Dyy - (0.9*Dxy)^2 per filter
// size, keypoints are strict 3x3x3 space-scale maxima above the threshold.
// Images smaller than the smallest filter yield an empty list with a warning.
std::vector<Keypoint> surf_interest_points(const GrayImage& f, const SurfParams& params);

// Unit impulses at the given keypoint locations.
SaliencyMap keypoint_density(const std::vector<Keypoint>& kps, int width, int height);

// Despeckles, detects keypoints, smooths their impulse map with a Gaussian
// of sigma density_sigma_m/res, and rescales so the maximum is exactly 1.
// No keypoints yields an all-zero map.
SaliencyMap surf_density_saliency(const GrayImage& f, const SurfParams& params,
                                  double res_m_per_px);

// Debug dump: CSV rows "x,y,scale,strength".
void write_keypoints_csv(const std::vector<Keypoint>& kps, const std::string& path);

} // namespace msas
