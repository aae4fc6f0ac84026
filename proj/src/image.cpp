#include "msas/image.hpp"

#include <algorithm>

namespace msas {

GrayImage normalize(const GrayImage& img) {
    if (img.data.empty())
        throw std::invalid_argument("normalize: empty image");
    auto [mn_it, mx_it] = std::minmax_element(img.data.begin(), img.data.end());
    const double mn = *mn_it, mx = *mx_it;
    GrayImage out(img.width, img.height);
    if (mx == mn)
        return out; // constant scene carries no structure
    const double inv = 1.0 / (mx - mn);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = (img.data[i] - mn) * inv;
    return out;
}

GrayImage drc_schlick(const GrayImage& img, double p) {
    if (p < 1.0)
        throw std::invalid_argument("drc_schlick: p must be >= 1");
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        const double x = img.data[i];
        out.data[i] = p * x / (p * x - x + 1.0);
    }
    return out;
}

} // namespace msas
