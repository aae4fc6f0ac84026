#include "msas/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace msas {

namespace {

struct Mat3 {
    double m[3][3];
};

struct Vec3 {
    double x, y, z;
};

Vec3 mul(const Mat3& A, const Vec3& v) {
    return {A.m[0][0] * v.x + A.m[0][1] * v.y + A.m[0][2] * v.z,
            A.m[1][0] * v.x + A.m[1][1] * v.y + A.m[1][2] * v.z,
            A.m[2][0] * v.x + A.m[2][1] * v.y + A.m[2][2] * v.z};
}

Mat3 invert(const Mat3& A) {
    const auto& m = A.m;
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    const double id = 1.0 / det;
    Mat3 r;
    r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * id;
    r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * id;
    r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * id;
    r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * id;
    r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * id;
    r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * id;
    r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * id;
    r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * id;
    r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * id;
    return r;
}

// Linear RGB -> XYZ built from the IEC 61966-2-1 chromaticities so that
// (1,1,1) maps exactly to the D65 white point. Inverting the same matrix
// keeps the round trip consistent to machine precision.
Mat3 make_rgb_to_xyz() {
    const double px[3] = {0.64, 0.30, 0.15};
    const double py[3] = {0.33, 0.60, 0.06};
    const double wx = 0.3127, wy = 0.3290;

    Mat3 C; // columns are unscaled primaries in XYZ
    for (int i = 0; i < 3; ++i) {
        C.m[0][i] = px[i] / py[i];
        C.m[1][i] = 1.0;
        C.m[2][i] = (1.0 - px[i] - py[i]) / py[i];
    }
    const Vec3 white = {wx / wy, 1.0, (1.0 - wx - wy) / wy};
    const Vec3 s = mul(invert(C), white); // per-primary scale

    Mat3 M;
    for (int r = 0; r < 3; ++r) {
        M.m[r][0] = C.m[r][0] * s.x;
        M.m[r][1] = C.m[r][1] * s.y;
        M.m[r][2] = C.m[r][2] * s.z;
    }
    return M;
}

const Mat3 kRgbToXyz = make_rgb_to_xyz();
const Mat3 kXyzToRgb = invert(kRgbToXyz);
const Vec3 kWhite = mul(kRgbToXyz, {1.0, 1.0, 1.0}); // D65, Y = 1

double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double srgb_encode(double v) {
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) {
    return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_finv(double u) {
    return u > kDelta ? u * u * u : 3.0 * kDelta * kDelta * (u - 4.0 / 29.0);
}

Vec3 lab_to_linear_rgb(const LabPixel& p) {
    const double fy = (p.L + 16.0) / 116.0;
    const double fx = fy + p.a / 500.0;
    const double fz = fy - p.b / 200.0;
    const Vec3 xyz = {kWhite.x * lab_finv(fx), kWhite.y * lab_finv(fy), kWhite.z * lab_finv(fz)};
    return mul(kXyzToRgb, xyz);
}

constexpr double kGamutEps = 1e-9;

} // namespace

double chroma(const LabPixel& p) {
    return std::hypot(p.a, p.b);
}

double hue(const LabPixel& p) {
    return std::atan2(p.b, p.a);
}

LabPixel srgb_to_lab(const RgbPixel& p) {
    const Vec3 lin = {srgb_decode(p.r), srgb_decode(p.g), srgb_decode(p.b)};
    const Vec3 xyz = mul(kRgbToXyz, lin);
    const double fx = lab_f(xyz.x / kWhite.x);
    const double fy = lab_f(xyz.y / kWhite.y);
    const double fz = lab_f(xyz.z / kWhite.z);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

RgbPixel lab_to_srgb_clipped(const LabPixel& p) {
    const Vec3 lin = lab_to_linear_rgb(p);
    return {std::clamp(srgb_encode(lin.x), 0.0, 1.0), std::clamp(srgb_encode(lin.y), 0.0, 1.0),
            std::clamp(srgb_encode(lin.z), 0.0, 1.0)};
}

bool in_srgb_gamut(const LabPixel& p) {
    const Vec3 lin = lab_to_linear_rgb(p);
    return lin.x >= -kGamutEps && lin.x <= 1.0 + kGamutEps && lin.y >= -kGamutEps &&
           lin.y <= 1.0 + kGamutEps && lin.z >= -kGamutEps && lin.z <= 1.0 + kGamutEps;
}

RgbPixel lab_to_srgb_chroma_scaled(const LabPixel& p) {
    if (in_srgb_gamut(p))
        return lab_to_srgb_clipped(p);
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 12; ++i) { // 2^-12 < 1e-3
        const double mid = 0.5 * (lo + hi);
        if (in_srgb_gamut({p.L, p.a * mid, p.b * mid}))
            lo = mid;
        else
            hi = mid;
    }
    return lab_to_srgb_clipped({p.L, p.a * lo, p.b * lo});
}

std::pair<double, double> max_chroma_fourth_quadrant(double L_star) {
    if (L_star < 0.0 || L_star > 100.0)
        throw std::invalid_argument("max_chroma_fourth_quadrant: L* must be in [0,100]");

    // Largest in-gamut radius along a unit direction (da, db).
    const auto boundary = [&](double da, double db) {
        double lo = 0.0, hi = 200.0;
        for (int i = 0; i < 30; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (in_srgb_gamut({L_star, mid * da, mid * db}))
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    };

    const double ra = boundary(1.0, 0.0);  // +a axis
    const double rb = boundary(0.0, -1.0); // -b axis
    if (ra < 1e-3 || rb < 1e-3)
        return {0.0, 0.0};

    // Shrink the (ra, rb) quarter-ellipse until every scanned ray is inside.
    double scale = 1.0;
    for (int k = 0; k <= 90; ++k) {
        const double th = k * std::numbers::pi / 180.0;
        const double a = ra * std::cos(th);
        const double b = -rb * std::sin(th);
        if (in_srgb_gamut({L_star, a * scale, b * scale}))
            continue;
        double lo = 0.0, hi = scale;
        for (int i = 0; i < 20; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (in_srgb_gamut({L_star, a * mid, b * mid}))
                lo = mid;
            else
                hi = mid;
        }
        scale = lo;
    }
    return {scale * ra, scale * rb};
}

const GamutTable& GamutTable::instance() {
    static const GamutTable table;
    return table;
}

GamutTable::GamutTable() {
    for (int i = 0; i < kSize; ++i) {
        const double L = 100.0 * i / (kSize - 1);
        const auto [ca, cb] = max_chroma_fourth_quadrant(L);
        ca_[i] = ca;
        cb_[i] = cb;
    }
}

std::pair<double, double> GamutTable::bounds(double L_star) const {
    const double L = std::clamp(L_star, 0.0, 100.0);
    const double u = L / 100.0 * (kSize - 1);
    const int i0 = std::min(static_cast<int>(u), kSize - 2);
    const double t = u - i0;
    // 0.999 absorbs interpolation error so lookups stay strictly inside
    const double ca = (ca_[i0] * (1.0 - t) + ca_[i0 + 1] * t) * 0.999;
    const double cb = (cb_[i0] * (1.0 - t) + cb_[i0 + 1] * t) * 0.999;
    return {ca, cb};
}

Colormap make_linear_gray_colormap() {
    Colormap map;
    for (int t = 0; t < 256; ++t)
        map.entries[t] = lab_to_srgb_clipped({100.0 * t / 255.0, 0.0, 0.0});
    return map;
}

namespace {

// Conventional hot ramp: black->red over [0, 3/8], red->yellow over
// [3/8, 3/4], yellow->white over [3/4, 1].
RgbPixel hot_base(double u) {
    return {std::clamp(u / 0.375, 0.0, 1.0), std::clamp((u - 0.375) / 0.375, 0.0, 1.0),
            std::clamp((u - 0.75) / 0.25, 0.0, 1.0)};
}

} // namespace

Colormap make_linear_hot_colormap() {
    constexpr int kSamples = 4097;
    std::vector<double> lstar(kSamples);
    for (int i = 0; i < kSamples; ++i)
        lstar[i] = srgb_to_lab(hot_base(i / double(kSamples - 1))).L;
    for (int i = 1; i < kSamples; ++i) // guard against flat spots
        lstar[i] = std::max(lstar[i], lstar[i - 1]);

    Colormap map;
    for (int t = 0; t < 256; ++t) {
        const double target = 100.0 * t / 255.0;
        const auto it = std::lower_bound(lstar.begin(), lstar.end(), target);
        double u;
        if (it == lstar.begin()) {
            u = 0.0;
        } else if (it == lstar.end()) {
            u = 1.0;
        } else {
            const int hi = static_cast<int>(it - lstar.begin());
            const double l0 = lstar[hi - 1], l1 = lstar[hi];
            const double f = l1 > l0 ? (target - l0) / (l1 - l0) : 0.0;
            u = (hi - 1 + f) / (kSamples - 1);
        }
        map.entries[t] = hot_base(u);
    }
    map.entries[0] = {0.0, 0.0, 0.0};
    map.entries[255] = {1.0, 1.0, 1.0};
    return map;
}

void write_colormap_csv(const Colormap& map, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp)
        throw std::runtime_error("cannot write file: " + path);
    std::fprintf(fp, "t,r,g,b\n");
    for (int t = 0; t < 256; ++t) {
        const RgbPixel& p = map.entries[t];
        const auto byte = [](double v) {
            return static_cast<int>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5));
        };
        std::fprintf(fp, "%d,%d,%d,%d\n", t, byte(p.r), byte(p.g), byte(p.b));
    }
    std::fclose(fp);
}

} // namespace msas
