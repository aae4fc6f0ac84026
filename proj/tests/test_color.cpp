#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "msas/color.hpp"
#include "oracles.hpp"

using namespace msas;

TEST_CASE("srgb_to_lab hits the white and black points") {
    const LabPixel white = srgb_to_lab({1.0, 1.0, 1.0});
    CHECK(white.L == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(std::abs(white.a) < 1e-4);
    CHECK(std::abs(white.b) < 1e-4);

    const LabPixel black = srgb_to_lab({0.0, 0.0, 0.0});
    CHECK(std::abs(black.L) < 1e-9);
    CHECK(std::abs(black.a) < 1e-9);
    CHECK(std::abs(black.b) < 1e-9);
}

TEST_CASE("srgb_to_lab mid gray matches the scalar oracle") {
    const LabPixel mid = srgb_to_lab({0.5, 0.5, 0.5});
    CHECK(mid.L == doctest::Approx(oracle::gray_lstar(0.5)).epsilon(1e-6));
    CHECK(mid.L == doctest::Approx(53.39).epsilon(1e-3));
    CHECK(std::abs(mid.a) < 1e-4);
    CHECK(std::abs(mid.b) < 1e-4);
}

TEST_CASE("1000 random pixels round-trip within 1e-4 per channel") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const RgbPixel p{u(rng), u(rng), u(rng)};
        const RgbPixel q = lab_to_srgb_clipped(srgb_to_lab(p));
        CHECK(std::abs(q.r - p.r) < 1e-4);
        CHECK(std::abs(q.g - p.g) < 1e-4);
        CHECK(std::abs(q.b - p.b) < 1e-4);
    }
}

TEST_CASE("gamut clipping saturates far out-of-gamut components") {
    const RgbPixel p = lab_to_srgb_clipped({50.0, 200.0, 0.0});
    CHECK(p.r == 1.0);
    const RgbPixel black = lab_to_srgb_clipped({0.0, 0.0, 0.0});
    CHECK(black.r == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(black.g == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(black.b == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chroma scaling is the identity on in-gamut points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        const LabPixel lab = srgb_to_lab({u(rng), u(rng), u(rng)});
        const RgbPixel a = lab_to_srgb_clipped(lab);
        const RgbPixel b = lab_to_srgb_chroma_scaled(lab);
        CHECK(std::abs(a.r - b.r) < 1e-4);
        CHECK(std::abs(a.g - b.g) < 1e-4);
        CHECK(std::abs(a.b - b.b) < 1e-4);
    }

    const RgbPixel gray = lab_to_srgb_chroma_scaled({50.0, 0.0, 0.0});
    const RgbPixel gray_ref = lab_to_srgb_clipped({50.0, 0.0, 0.0});
    CHECK(gray.r == doctest::Approx(gray_ref.r).epsilon(1e-12));
}

TEST_CASE("chroma scaling lands on the gamut boundary found by a linear scan") {
    const LabPixel target{50.0, 120.0, -120.0};
    const RgbPixel out = lab_to_srgb_chroma_scaled(target);
    CHECK(out.r >= 0.0);
    CHECK(out.r <= 1.0);
    CHECK(out.g >= 0.0);
    CHECK(out.g <= 1.0);
    CHECK(out.b >= 0.0);
    CHECK(out.b <= 1.0);

    // brute scan: walk the scale down from 1 until the point is in gamut
    double s_scan = 0.0;
    for (double s = 1.0; s >= 0.0; s -= 1e-3) {
        if (in_srgb_gamut({target.L, target.a * s, target.b * s})) {
            s_scan = s;
            break;
        }
    }
    const LabPixel back = srgb_to_lab(out);
    CHECK(chroma(back) ==
          doctest::Approx(s_scan * chroma(target)).epsilon(5e-3));
    CHECK(std::abs(hue(back) - std::atan2(-120.0, 120.0)) < 0.01);
}

TEST_CASE("chroma scaling preserves hue for random out-of-gamut points") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uL(5.0, 95.0), uC(30.0, 150.0),
        uh(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const double L = uL(rng), c = uC(rng), h = uh(rng);
        const LabPixel lab{L, c * std::cos(h), c * std::sin(h)};
        if (chroma(lab) <= 1.0)
            continue;
        const LabPixel back = srgb_to_lab(lab_to_srgb_chroma_scaled(lab));
        if (chroma(back) < 0.5)
            continue; // hue angle is ill-conditioned near the neutral axis
        double dh = std::remainder(hue(back) - h, 2.0 * std::numbers::pi);
        CHECK(std::abs(dh) < 0.01);
    }
}

TEST_CASE("max_chroma_fourth_quadrant collapses at the lightness extremes") {
    const auto [a0, b0] = max_chroma_fourth_quadrant(0.0);
    CHECK(a0 <= 1e-3);
    CHECK(b0 <= 1e-3);
    const auto [a100, b100] = max_chroma_fourth_quadrant(100.0);
    CHECK(a100 <= 1e-3);
    CHECK(b100 <= 1e-3);
}

TEST_CASE("max_chroma_fourth_quadrant is positive at mid lightness") {
    for (double L : {25.0, 50.0, 75.0}) {
        const auto [ca, cb] = max_chroma_fourth_quadrant(L);
        CHECK(ca > 0.0);
        CHECK(cb > 0.0);
    }
}

TEST_CASE("max_chroma_fourth_quadrant sweep stays in gamut at L*=50") {
    const auto [ca, cb] = max_chroma_fourth_quadrant(50.0);

    // dense rasterization: the returned bounds must sit inside the region
    // the gamut actually spans along the two axes
    double a_reach = 0.0, b_reach = 0.0;
    for (double c = 0.0; c < 200.0; c += 0.25) {
        if (in_srgb_gamut({50.0, c, 0.0}))
            a_reach = c;
        if (in_srgb_gamut({50.0, 0.0, -c}))
            b_reach = c;
    }
    CHECK(ca <= a_reach + 0.25);
    CHECK(cb <= b_reach + 0.25);
    CHECK(ca > 5.0);
    CHECK(cb > 5.0);

    for (int k = 0; k <= 180; ++k) {
        const double th = k * std::numbers::pi / 360.0;
        CHECK(in_srgb_gamut({50.0, ca * std::cos(th), -cb * std::sin(th)}));
    }
}

TEST_CASE("gamut slices are star-shaped toward the neutral axis") {
    // chroma shrinking relies on this: any fraction of an in-gamut radius
    // stays in gamut
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> uL(2.0, 98.0), uh(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 300; ++i) {
        const double L = uL(rng), h = uh(rng);
        double r = 0.0;
        for (double c = 0.0; c < 180.0; c += 0.5)
            if (in_srgb_gamut({L, c * std::cos(h), c * std::sin(h)}))
                r = c;
        for (double s : {0.25, 0.5, 0.75, 0.95})
            CHECK(in_srgb_gamut({L, r * s * std::cos(h), r * s * std::sin(h)}));
    }
}

TEST_CASE("gamut table matches the direct computation") {
    const GamutTable& table = GamutTable::instance();
    for (double L : {10.0, 33.3, 50.0, 66.6, 90.0}) {
        const auto [ca, cb] = max_chroma_fourth_quadrant(L);
        const auto [ta, tb] = table.bounds(L);
        CHECK(ta == doctest::Approx(ca).epsilon(0.02));
        CHECK(tb == doctest::Approx(cb).epsilon(0.02));
        CHECK(ta <= ca + 1e-9); // table lookups never exceed the true bound
        CHECK(tb <= cb + 1e-9);
    }
}

namespace {

void check_colormap_linearity(const Colormap& map) {
    double prev = -1.0;
    for (int t = 0; t < 256; ++t) {
        const double L = srgb_to_lab(map.entries[t]).L;
        CHECK(L >= prev - 1e-9); // monotone nondecreasing
        CHECK(std::abs(L - 100.0 * t / 255.0) <= 2.0);
        prev = L;
    }
}

} // namespace

TEST_CASE("linear gray colormap: endpoints, neutrality, exact linearity") {
    const Colormap map = make_linear_gray_colormap();
    CHECK(map.entries[0].r == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(map.entries[255].r == doctest::Approx(1.0).epsilon(1e-9));
    for (int t = 0; t < 256; ++t) {
        CHECK(std::abs(map.entries[t].r - map.entries[t].g) <= 1.0 / 255.0);
        CHECK(std::abs(map.entries[t].g - map.entries[t].b) <= 1.0 / 255.0);
        const double L = srgb_to_lab(map.entries[t]).L;
        CHECK(L == doctest::Approx(100.0 * t / 255.0).epsilon(1e-6));
    }
    check_colormap_linearity(map);
    CHECK(srgb_to_lab(map.entries[128]).L == doctest::Approx(100.0 * 128 / 255.0).epsilon(1e-6));
}

TEST_CASE("linear hot colormap: endpoints and near-linear luminance") {
    const Colormap map = make_linear_hot_colormap();
    CHECK(map.entries[0].r == 0.0);
    CHECK(map.entries[0].g == 0.0);
    CHECK(map.entries[0].b == 0.0);
    CHECK(map.entries[255].r == 1.0);
    CHECK(map.entries[255].g == 1.0);
    CHECK(map.entries[255].b == 1.0);
    check_colormap_linearity(map);
    CHECK(std::abs(srgb_to_lab(map.entries[128]).L - 50.2) <= 2.0);
    // the ramp actually passes through saturated colors, not grays
    CHECK(map.entries[100].r > map.entries[100].b + 0.2);
}

TEST_CASE("colormap CSV export") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "msas_test_cmap.csv").string();
    write_colormap_csv(make_linear_gray_colormap(), path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        ++lines;
    CHECK(lines == 257); // header + 256 entries
    fs::remove(path);
}
