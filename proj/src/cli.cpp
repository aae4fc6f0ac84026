#include "msas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "msas/image_io.hpp"
#include "msas/saliency.hpp"

namespace fs = std::filesystem;

namespace msas::cli {

const char* kMetricsCsvHeader =
    "pair_id,scheme,ssim_hf,ssim_lf,ncc_hf,ncc_lf,mse_hf,mse_lf,"
    "baseline_ssim,baseline_ncc,baseline_mse";

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::cfar_cielab: return "cfar-cielab";
    case Scheme::surf_cielab: return "surf-cielab";
    case Scheme::dual_colormap: return "dual-colormap";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "cfar-cielab") return Scheme::cfar_cielab;
    if (name == "surf-cielab") return Scheme::surf_cielab;
    if (name == "dual-colormap") return Scheme::dual_colormap;
    throw UsageError("unknown scheme '" + name +
                     "' (expected cfar-cielab, surf-cielab or dual-colormap)");
}

GrayImage condition(const GrayImage& raw, double schlick_p) {
    return drc_schlick(normalize(raw), schlick_p);
}

RgbImage fuse_with_scheme(const ImagePair& pair, Scheme scheme, const FusionConfig& cfg) {
    switch (scheme) {
    case Scheme::cfar_cielab:
        return fuse_cfar_cielab(pair, cfg);
    case Scheme::surf_cielab:
        return fuse_surf_cielab(pair, cfg);
    case Scheme::dual_colormap: {
        static const Colormap gray = make_linear_gray_colormap();
        static const Colormap hot = make_linear_hot_colormap();
        return fuse_dual_colormap(pair, cfg, gray, hot);
    }
    }
    throw UsageError("unknown scheme");
}

namespace {

using nlohmann::json;

GamutStrategy parse_gamut(const std::string& name) {
    if (name == "restricted") return GamutStrategy::restricted;
    if (name == "chroma-scale") return GamutStrategy::chroma_scale;
    if (name == "clip") return GamutStrategy::clip;
    throw UsageError("unknown gamut_strategy '" + name +
                     "' (expected restricted, chroma-scale or clip)");
}

void apply_config_json(const json& j, FusionConfig& fusion, SceneSpec& scene) {
    for (const auto& [key, value] : j.items()) {
        if (key == "alpha_cfar_cielab") fusion.alpha_cfar_cielab = value.get<double>();
        else if (key == "alpha_dual") fusion.alpha_dual = value.get<double>();
        else if (key == "boxcar_extent_m") fusion.boxcar_extent_m = value.get<double>();
        else if (key == "chroma_0") fusion.chroma_0 = value.get<double>();
        else if (key == "chroma_a") fusion.chroma_a = value.get<double>();
        else if (key == "chroma_b") fusion.chroma_b = value.get<double>();
        else if (key == "hue_0") fusion.hue_0 = value.get<double>();
        else if (key == "hue_1") fusion.hue_1 = value.get<double>();
        else if (key == "resolution_m_per_px") {
            fusion.resolution_m_per_px = value.get<double>();
            scene.resolution_m_per_px = value.get<double>();
        }
        else if (key == "schlick_p") fusion.schlick_p = value.get<double>();
        else if (key == "gamut_strategy") fusion.gamut = parse_gamut(value.get<std::string>());
        else if (key == "surf_hessian_threshold") fusion.surf.hessian_threshold = value.get<double>();
        else if (key == "surf_octave_filter_sizes")
            fusion.surf.octave_filter_sizes = value.get<std::vector<int>>();
        else if (key == "surf_density_sigma_m") fusion.surf.density_sigma_m = value.get<double>();
        else if (key == "surf_despeckle_window") fusion.surf.despeckle_window = value.get<int>();
        else if (key == "seed") scene.seed = value.get<std::uint64_t>();
        else if (key == "size") { scene.width = value.get<int>(); scene.height = value.get<int>(); }
        else if (key == "width") scene.width = value.get<int>();
        else if (key == "height") scene.height = value.get<int>();
        else if (key == "ripple_wavelength_m") scene.ripple_wavelength_m = value.get<double>();
        else if (key == "ripple_amplitude") scene.ripple_amplitude = value.get<double>();
        else if (key == "ripple_orientation_rad") scene.ripple_orientation_rad = value.get<double>();
        else if (key == "n_rocks") scene.n_rocks = value.get<int>();
        else if (key == "n_buried") scene.n_buried = value.get<int>();
        else if (key == "speckle_looks") scene.speckle_looks = value.get<int>();
        else throw UsageError("unknown config key '" + key + "'");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string metrics_row(const std::string& pair_id, const std::string& scheme,
                        const MetricsReport& r) {
    return pair_id + "," + scheme + "," + fmt(r.ssim_hf) + "," + fmt(r.ssim_lf) + "," +
           fmt(r.ncc_hf) + "," + fmt(r.ncc_lf) + "," + fmt(r.mse_hf) + "," + fmt(r.mse_lf) + "," +
           fmt(r.baseline_ssim) + "," + fmt(r.baseline_ncc) + "," + fmt(r.baseline_mse);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    return out;
}

ImagePair load_conditioned_pair(const std::string& hf_path, const std::string& lf_path,
                                double resolution, double schlick_p) {
    GrayImage hf = load_gray(hf_path);
    GrayImage lf = load_gray(lf_path);
    if (!hf.same_size(lf))
        throw std::runtime_error("dimension mismatch between " + hf_path + " and " + lf_path);
    return {condition(hf, schlick_p), condition(lf, schlick_p), resolution};
}

} // namespace

void apply_config_file(const std::string& path, FusionConfig& fusion, SceneSpec& scene) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    apply_config_json(j, fusion, scene);
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open manifest: " + path);
    const fs::path base = fs::path(path).parent_path();
    std::string line;
    if (!std::getline(in, line))
        throw UsageError("manifest is empty: " + path);
    const auto header = split_csv_line(line);
    std::map<std::string, int> col;
    for (int i = 0; i < static_cast<int>(header.size()); ++i)
        col[header[i]] = i;
    for (const char* need : {"pair_id", "hf_path", "lf_path", "resolution_m_per_px"})
        if (!col.count(need))
            throw UsageError("manifest missing column '" + std::string(need) + "': " + path);

    std::vector<ManifestRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() < header.size())
            throw std::runtime_error("malformed manifest row: " + line);
        const auto resolve = [&](const std::string& p) {
            return fs::path(p).is_absolute() ? p : (base / p).string();
        };
        rows.push_back({f[col["pair_id"]], resolve(f[col["hf_path"]]), resolve(f[col["lf_path"]]),
                        std::stod(f[col["resolution_m_per_px"]])});
    }
    if (rows.empty())
        throw UsageError("manifest has no data rows: " + path);
    return rows;
}

void cmd_fuse(const FuseOptions& opt) {
    FusionConfig cfg;
    SceneSpec scene_unused;
    if (!opt.config_path.empty())
        apply_config_file(opt.config_path, cfg, scene_unused);
    if (opt.resolution)
        cfg.resolution_m_per_px = *opt.resolution;
    if (opt.alpha) {
        if (opt.scheme == Scheme::cfar_cielab)
            cfg.alpha_cfar_cielab = *opt.alpha;
        else if (opt.scheme == Scheme::dual_colormap)
            cfg.alpha_dual = *opt.alpha;
        else
            std::cerr << "msas: warning: --alpha has no effect for scheme "
                      << to_string(opt.scheme) << "\n";
    }
    validate(cfg);

    const ImagePair pair = load_conditioned_pair(opt.hf_path, opt.lf_path,
                                                 cfg.resolution_m_per_px, cfg.schlick_p);
    const RgbImage fused = fuse_with_scheme(pair, opt.scheme, cfg);

    if (!opt.dump_saliency_dir.empty()) {
        fs::create_directories(opt.dump_saliency_dir);
        const fs::path dir(opt.dump_saliency_dir);
        const SaliencyMap cfar = cfar_saliency(
            pair.lf, {cfg.alpha_cfar_cielab, cfg.boxcar_extent_m}, pair.resolution_m_per_px);
        save_gray8(normalize(cfar), (dir / "saliency_cfar_lf.png").string());
        save_gray8(surf_density_saliency(pair.hf, cfg.surf, pair.resolution_m_per_px),
                   (dir / "saliency_surf_hf.png").string());
        save_gray8(surf_density_saliency(pair.lf, cfg.surf, pair.resolution_m_per_px),
                   (dir / "saliency_surf_lf.png").string());
        write_keypoints_csv(
            surf_interest_points(despeckle(pair.lf, cfg.surf.despeckle_window), cfg.surf),
            (dir / "keypoints_lf.csv").string());
    }
    save_rgb(fused, opt.out_path);
}

MetricsReport cmd_eval(const EvalOptions& opt) {
    FusionConfig cfg;
    SceneSpec scene_unused;
    if (!opt.config_path.empty())
        apply_config_file(opt.config_path, cfg, scene_unused);
    if (opt.resolution)
        cfg.resolution_m_per_px = *opt.resolution;

    const RgbImage fused = load_rgb(opt.fused_path);
    const ImagePair pair = load_conditioned_pair(opt.hf_path, opt.lf_path,
                                                 cfg.resolution_m_per_px, cfg.schlick_p);
    const MetricsReport r = evaluate_pair(pair, fused);

    std::printf("ssim_hf=%s\nssim_lf=%s\nncc_hf=%s\nncc_lf=%s\nmse_hf=%s\nmse_lf=%s\n"
                "baseline_ssim=%s\nbaseline_ncc=%s\nbaseline_mse=%s\n",
                fmt(r.ssim_hf).c_str(), fmt(r.ssim_lf).c_str(), fmt(r.ncc_hf).c_str(),
                fmt(r.ncc_lf).c_str(), fmt(r.mse_hf).c_str(), fmt(r.mse_lf).c_str(),
                fmt(r.baseline_ssim).c_str(), fmt(r.baseline_ncc).c_str(),
                fmt(r.baseline_mse).c_str());

    if (!opt.csv_path.empty()) {
        std::ofstream out(opt.csv_path);
        if (!out)
            throw std::runtime_error("cannot write file: " + opt.csv_path);
        out << kMetricsCsvHeader << "\n"
            << metrics_row(fs::path(opt.fused_path).stem().string(), "eval", r) << "\n";
    }
    return r;
}

int cmd_batch(const BatchOptions& opt) {
    FusionConfig cfg;
    SceneSpec scene_unused;
    if (!opt.config_path.empty())
        apply_config_file(opt.config_path, cfg, scene_unused);
    if (opt.schemes.empty())
        throw UsageError("batch: no schemes requested");

    std::vector<ManifestRow> rows = read_manifest(opt.manifest_path);
    std::sort(rows.begin(), rows.end(),
              [](const ManifestRow& a, const ManifestRow& b) { return a.pair_id < b.pair_id; });
    std::vector<Scheme> schemes = opt.schemes;
    std::sort(schemes.begin(), schemes.end(),
              [](Scheme a, Scheme b) { return to_string(a) < to_string(b); });

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);

    struct Entry {
        std::string pair_id;
        std::string scheme;
        MetricsReport report;
    };
    std::vector<Entry> entries;
    int failures = 0;
    for (const ManifestRow& row : rows) {
        try {
            FusionConfig pair_cfg = cfg;
            pair_cfg.resolution_m_per_px = row.resolution_m_per_px;
            const ImagePair pair = load_conditioned_pair(row.hf_path, row.lf_path,
                                                         row.resolution_m_per_px, cfg.schlick_p);
            for (Scheme scheme : schemes) {
                const RgbImage fused = fuse_with_scheme(pair, scheme, pair_cfg);
                save_rgb(fused, (out_dir / (row.pair_id + "_" + to_string(scheme) + ".png")).string());
                entries.push_back({row.pair_id, to_string(scheme), evaluate_pair(pair, fused)});
            }
        } catch (const std::exception& e) {
            std::cerr << "msas: error: pair " << row.pair_id << ": " << e.what() << "\n";
            ++failures;
        }
    }

    std::ofstream csv(out_dir / "metrics.csv");
    if (!csv)
        throw std::runtime_error("cannot write metrics.csv in " + opt.out_dir);
    csv << kMetricsCsvHeader << "\n";
    for (const Entry& e : entries)
        csv << metrics_row(e.pair_id, e.scheme, e.report) << "\n";
    for (Scheme scheme : schemes) {
        MetricsReport mean;
        int n = 0;
        for (const Entry& e : entries) {
            if (e.scheme != to_string(scheme))
                continue;
            mean.ssim_hf += e.report.ssim_hf;
            mean.ssim_lf += e.report.ssim_lf;
            mean.ncc_hf += e.report.ncc_hf;
            mean.ncc_lf += e.report.ncc_lf;
            mean.mse_hf += e.report.mse_hf;
            mean.mse_lf += e.report.mse_lf;
            mean.baseline_ssim += e.report.baseline_ssim;
            mean.baseline_ncc += e.report.baseline_ncc;
            mean.baseline_mse += e.report.baseline_mse;
            ++n;
        }
        if (n > 0) {
            const double inv = 1.0 / n;
            mean.ssim_hf *= inv; mean.ssim_lf *= inv;
            mean.ncc_hf *= inv; mean.ncc_lf *= inv;
            mean.mse_hf *= inv; mean.mse_lf *= inv;
            mean.baseline_ssim *= inv; mean.baseline_ncc *= inv; mean.baseline_mse *= inv;
        }
        csv << metrics_row("mean", to_string(scheme), mean) << "\n";
    }
    return failures;
}

void cmd_synth(const SynthOptions& opt) {
    if (opt.n < 1)
        throw UsageError("synth: --n must be >= 1");
    FusionConfig fusion_unused;
    SceneSpec spec;
    if (!opt.config_path.empty())
        apply_config_file(opt.config_path, fusion_unused, spec);
    if (opt.size)
        spec.width = spec.height = *opt.size;
    if (opt.resolution)
        spec.resolution_m_per_px = *opt.resolution;

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);
    std::ofstream manifest(out_dir / "manifest.csv");
    if (!manifest)
        throw std::runtime_error("cannot write manifest.csv in " + opt.out_dir);
    manifest << "pair_id,hf_path,lf_path,resolution_m_per_px,seed,width,height,"
                "ripple_wavelength_m,ripple_amplitude,ripple_orientation_rad,"
                "n_rocks,n_buried,speckle_looks\n";

    const std::vector<Scene> corpus = generate_corpus(opt.n, opt.seed, spec);
    for (int i = 0; i < opt.n; ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "%04d", i);
        const Scene& scene = corpus[i];
        const std::string hf_name = std::string("hf_") + id + ".png";
        const std::string lf_name = std::string("lf_") + id + ".png";
        save_gray16(scene.pair.hf, (out_dir / hf_name).string());
        save_gray16(scene.pair.lf, (out_dir / lf_name).string());

        GrayImage mask_lf(scene.truth.lf_saliency_mask.width, scene.truth.lf_saliency_mask.height);
        GrayImage mask_hf(scene.truth.hf_detail_mask.width, scene.truth.hf_detail_mask.height);
        for (std::size_t k = 0; k < mask_lf.data.size(); ++k) {
            mask_lf.data[k] = scene.truth.lf_saliency_mask.data[k] ? 1.0 : 0.0;
            mask_hf.data[k] = scene.truth.hf_detail_mask.data[k] ? 1.0 : 0.0;
        }
        save_gray8(mask_lf, (out_dir / (std::string("mask_lf_") + id + ".png")).string());
        save_gray8(mask_hf, (out_dir / (std::string("mask_hf_") + id + ".png")).string());

        const SceneSpec& s = scene.spec;
        manifest << id << "," << hf_name << "," << lf_name << "," << fmt(s.resolution_m_per_px)
                 << "," << s.seed << "," << s.width << "," << s.height << ","
                 << fmt(s.ripple_wavelength_m) << "," << fmt(s.ripple_amplitude) << ","
                 << fmt(s.ripple_orientation_rad) << "," << s.n_rocks << "," << s.n_buried << ","
                 << s.speckle_looks << "\n";
    }
}

} // namespace msas::cli
