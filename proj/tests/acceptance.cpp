// End-to-end acceptance suite. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msas/cli.hpp"
#include "msas/color.hpp"
#include "msas/fusion.hpp"
#include "msas/image_io.hpp"
#include "msas/metrics.hpp"
#include "msas/saliency.hpp"
#include "msas/synth.hpp"
#include "oracles.hpp"

using namespace msas;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Line {
    int id;
    std::string text;
};
std::vector<Line> g_lines;

void report(int id, bool pass, const std::string& name, const std::string& detail = "") {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "[%2d] %s  %s%s%s", id, pass ? "PASS" : "FAIL", name.c_str(),
                  detail.empty() ? "" : ": ", detail.c_str());
    g_lines.push_back({id, buf});
    if (!pass)
        ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

GrayImage gradient_image(int w, int h) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<double>(x) / (w - 1);
    return img;
}

double elapsed_s(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criteria -------------------------------------------------------------

void c1_color_round_trip() {
    const auto start = Clock::now();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const RgbPixel p{u(rng), u(rng), u(rng)};
        const RgbPixel q = lab_to_srgb_clipped(srgb_to_lab(p));
        worst = std::max({worst, std::abs(q.r - p.r), std::abs(q.g - p.g), std::abs(q.b - p.b)});
    }
    const double secs = elapsed_s(start);
    report(1, worst < 1e-4 && secs < 1.0, "color round trip, 1000 random pixels",
           fmt("max |delta| = %.3g (tol 1e-4), %.3f s (limit 1 s)", worst, secs));
}

void c2_hue_sweep_endpoints() {
    const double ca = 41.0, cb = 57.0;
    const auto [a0, b0] = hue_from_saliency(0.0, ca, cb);
    const auto [a1, b1] = hue_from_saliency(1.0, ca, cb);
    const double worst = std::max({std::abs(a0), std::abs(b0 + cb), std::abs(a1 - ca),
                                   std::abs(b1)});
    report(2, worst < 1e-9, "hue sweep endpoints (0,-C_b) and (C_a,0)",
           fmt("max |delta| = %.3g (tol 1e-9)", worst));
}

void c3_supremum_degenerate_luminance() {
    // constant LF band -> all-zero saliency -> luminance must be f_HF
    const ImagePair pair{gradient_image(256, 128), GrayImage(256, 128, 0.5), 1.0};
    const RgbImage fused = fuse_cfar_cielab(pair, FusionConfig{});

    const fs::path png = fs::temp_directory_path() / "msas_acc_c3.png";
    save_rgb(fused, png.string());
    const GrayImage gray = fused_to_perceptual_gray(load_rgb(png.string()));
    fs::remove(png);

    double worst = 0.0;
    for (std::size_t i = 0; i < gray.data.size(); ++i)
        worst = std::max(worst, std::abs(gray.data[i] - pair.hf.data[i]));
    report(3, worst <= 1.0 / 255.0, "flat-LF fusion reproduces HF luminance",
           fmt("max |L*/100 - f_HF| = %.3g (tol %.3g)", worst, 1.0 / 255.0));
}

void c4_blend_endpoints() {
    const GrayImage hf = oracle::random_image(32, 32, 7);
    const GrayImage lf = oracle::random_image(32, 32, 8);
    const GrayImage w1 = blend_luminance(hf, lf, GrayImage(32, 32, 1.0));
    const GrayImage w0 = blend_luminance(hf, lf, GrayImage(32, 32, 0.0));
    bool pass = true;
    for (std::size_t i = 0; i < hf.data.size(); ++i)
        pass = pass && w1.data[i] == hf.data[i] && w0.data[i] == lf.data[i];
    report(4, pass, "luminance blend endpoints reproduce the bands exactly");
}

void c5_metric_identities() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const GrayImage f = oracle::random_image(16, 16, 1000 + i);
        worst = std::max({worst, std::abs(ssim_global(f, f) - 1.0), std::abs(ncc(f, f) - 1.0),
                          std::abs(mse(f, f))});
    }
    report(5, worst < 1e-9, "metric identities on 100 random images",
           fmt("max |delta| = %.3g (tol 1e-9)", worst));
}

void c6_ssim_reduction() {
    std::mt19937 rng(6);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const GrayImage f = oracle::random_image(16, 16, 2000 + trial);
        GrayImage g = f; // shuffled copy: identical mean and variance
        std::shuffle(g.data.begin(), g.data.end(), rng);

        const double n = static_cast<double>(f.data.size());
        const double mean = oracle::mean_of(f);
        double var = 0.0, cov = 0.0;
        for (std::size_t i = 0; i < f.data.size(); ++i) {
            var += (f.data[i] - mean) * (f.data[i] - mean);
            cov += (f.data[i] - mean) * (g.data[i] - mean);
        }
        var /= n;
        cov /= n;
        const double reduced = (2.0 * cov + 0.0009) / (2.0 * var + 0.0009);
        worst = std::max(worst, std::abs(ssim_global(f, g) - reduced));
    }
    report(6, worst < 1e-9, "ssim reduces to its cross-correlation term",
           fmt("max |delta| = %.3g over 50 matched-moment pairs (tol 1e-9)", worst));
}

void c9_oracle_equivalence() {
    const GrayImage f = oracle::random_image(16, 16, 31);
    const GrayImage g = oracle::random_image(16, 16, 32);

    double mean_err = 0.0;
    const GrayImage fast_mean = boxcar_background(f, 5.0, 1.0);
    const GrayImage slow_mean = oracle::boxcar(f, 5);
    for (std::size_t i = 0; i < f.data.size(); ++i)
        mean_err = std::max(mean_err, std::abs(fast_mean.data[i] - slow_mean.data[i]));

    bool median_exact = true;
    const GrayImage fast_med = despeckle(f, 3);
    const GrayImage slow_med = oracle::median(f, 3);
    for (std::size_t i = 0; i < f.data.size(); ++i)
        median_exact = median_exact && fast_med.data[i] == slow_med.data[i];

    const double ncc_err = std::abs(ncc(f, g) - oracle::ncc(f, g));
    const double mse_err = std::abs(mse(f, g) - oracle::mse(f, g));
    const double ssim_err = std::abs(ssim_global(f, g) - oracle::ssim(f, g));

    const bool pass = mean_err <= 1e-6 && median_exact && ncc_err <= 1e-9 && mse_err <= 1e-9 &&
                      ssim_err <= 1e-9;
    report(9, pass, "brute-force oracle equivalence",
           fmt("mean %.2g, ncc %.2g, ssim %.2g; median exact", mean_err, ncc_err, ssim_err) +
               (median_exact ? "" : " NO"));
}

void c10_surf_blob() {
    GrayImage blob(64, 64, 0.0);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const double dx = x - 32.0, dy = y - 32.0;
            blob.at(x, y) = std::exp(-(dx * dx + dy * dy) / 18.0);
        }
    const auto kps = surf_interest_points(blob, SurfParams{});
    const bool one_centered = kps.size() == 1 && std::abs(kps[0].x - 32.0) <= 2.0 &&
                              std::abs(kps[0].y - 32.0) <= 2.0;
    const bool flat_empty = surf_interest_points(GrayImage(64, 64, 0.5), SurfParams{}).empty();
    std::string detail = fmt("%g keypoints", static_cast<double>(kps.size()));
    if (!kps.empty())
        detail += fmt(" at (%.0f, %.0f)", kps[0].x, kps[0].y);
    report(10, one_centered && flat_empty, "blob detector sanity", detail);
}

void c11_colormap_linearity() {
    double worst = 0.0;
    bool monotone = true;
    for (const Colormap& map : {make_linear_gray_colormap(), make_linear_hot_colormap()}) {
        double prev = -1.0;
        for (int t = 0; t < 256; ++t) {
            const double L = srgb_to_lab(map.entries[t]).L;
            worst = std::max(worst, std::abs(L - 100.0 * t / 255.0));
            monotone = monotone && L >= prev - 1e-9;
            prev = L;
        }
    }
    report(11, worst <= 2.0 && monotone, "colormap L* linearity",
           fmt("max |L* - 100t/255| = %.3f (tol 2.0), monotone", worst));
}

void c12_dual_colormap_neutrality() {
    const ImagePair pair{gradient_image(128, 96), GrayImage(128, 96, 0.5), 1.0};
    const RgbImage fused = fuse_dual_colormap(pair, FusionConfig{}, make_linear_gray_colormap(),
                                              make_linear_hot_colormap());
    double worst = 0.0;
    for (const RgbPixel& p : fused.data)
        worst = std::max({worst, std::abs(p.r - p.g), std::abs(p.g - p.b)});
    report(12, worst <= 1.0 / 255.0, "dual colormap neutrality without LF saliency",
           fmt("max channel spread = %.3g (tol %.3g)", worst, 1.0 / 255.0));
}

// --- corpus-level criteria (7, 8, 13) --------------------------------------

struct SchemeMeans {
    double ssim_hf = 0, ssim_lf = 0, ncc_hf = 0, ncc_lf = 0;
    double baseline_ssim = 0, baseline_ncc = 0;
};

std::map<std::string, SchemeMeans> parse_mean_rows(const std::string& csv_path) {
    std::ifstream in(csv_path);
    std::map<std::string, SchemeMeans> means;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("mean,", 0) != 0)
            continue;
        std::stringstream ss(line);
        std::vector<std::string> f;
        std::string field;
        while (std::getline(ss, field, ','))
            f.push_back(field);
        // pair_id,scheme,ssim_hf,ssim_lf,ncc_hf,ncc_lf,mse_hf,mse_lf,
        // baseline_ssim,baseline_ncc,baseline_mse
        SchemeMeans m;
        m.ssim_hf = std::stod(f[2]);
        m.ssim_lf = std::stod(f[3]);
        m.ncc_hf = std::stod(f[4]);
        m.ncc_lf = std::stod(f[5]);
        m.baseline_ssim = std::stod(f[8]);
        m.baseline_ncc = std::stod(f[9]);
        means[f[1]] = m;
    }
    return means;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void corpus_criteria() {
    const fs::path root = fs::temp_directory_path() / "msas_acceptance_corpus";
    fs::remove_all(root);
    fs::create_directories(root);

    std::printf("     ... generating the 32-pair 512x512 corpus in %s\n", root.string().c_str());
    std::fflush(stdout);
    cli::SynthOptions sopt;
    sopt.out_dir = (root / "scenes").string();
    sopt.n = 32;
    sopt.seed = 1;
    cli::cmd_synth(sopt);

    cli::BatchOptions bopt;
    bopt.manifest_path = (root / "scenes" / "manifest.csv").string();
    bopt.out_dir = (root / "run1").string();
    const auto start = Clock::now();
    const int failures = cli::cmd_batch(bopt);
    const double secs = elapsed_s(start);

    const std::string csv1 = (root / "run1" / "metrics.csv").string();
    const auto means = parse_mean_rows(csv1);

    bool ordering = failures == 0 && means.size() == 3;
    for (const auto& [scheme, m] : means) {
        ordering = ordering && m.ssim_hf >= m.baseline_ssim && m.ssim_lf >= m.baseline_ssim &&
                   m.ncc_hf >= m.baseline_ncc && m.ncc_lf >= m.baseline_ncc;
    }
    std::string detail;
    for (const auto& [scheme, m] : means)
        detail += fmt((scheme + " ssim(hf %.3f, lf %.3f; base %.3f) ").c_str(), m.ssim_hf,
                      m.ssim_lf, m.baseline_ssim);
    detail += fmt("| %.1f s (limit 120 s)", secs);
    report(7, ordering && secs < 120.0, "fused similarity beats the band-vs-band baseline",
           detail);

    const auto& cfar = means.at("cfar-cielab");
    const auto& surf = means.at("surf-cielab");
    const auto& dual = means.at("dual-colormap");
    const bool ranking = cfar.ssim_hf >= surf.ssim_hf && cfar.ssim_hf >= dual.ssim_hf &&
                         dual.ssim_lf > cfar.ssim_lf && surf.ssim_lf > cfar.ssim_lf;
    report(8, ranking, "scheme ranking",
           fmt("ssim_hf: cfar %.3f vs surf %.3f, dual %.3f; ", cfar.ssim_hf, surf.ssim_hf,
               dual.ssim_hf) +
               fmt("ssim_lf: cfar %.3f vs surf %.3f, dual %.3f", cfar.ssim_lf, surf.ssim_lf,
                   dual.ssim_lf));

    // rerun for byte-identical metrics
    cli::BatchOptions bopt2 = bopt;
    bopt2.out_dir = (root / "run2").string();
    cli::cmd_batch(bopt2);
    const bool identical = slurp(csv1) == slurp((root / "run2" / "metrics.csv").string());
    report(13, identical, "batch rerun produces a byte-identical metrics CSV");

    fs::remove_all(root);
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    std::fflush(stdout);
    c1_color_round_trip();
    c2_hue_sweep_endpoints();
    c3_supremum_degenerate_luminance();
    c4_blend_endpoints();
    c5_metric_identities();
    c6_ssim_reduction();
    corpus_criteria(); // 7, 8, 13
    c9_oracle_equivalence();
    c10_surf_blob();
    c11_colormap_linearity();
    c12_dual_colormap_neutrality();

    std::stable_sort(g_lines.begin(), g_lines.end(),
                     [](const Line& a, const Line& b) { return a.id < b.id; });
    for (const Line& line : g_lines)
        std::printf("%s\n", line.text.c_str());
    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
