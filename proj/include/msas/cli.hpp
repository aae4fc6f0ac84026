#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msas/fusion.hpp"
#include "msas/image.hpp"
#include "msas/metrics.hpp"
#include "msas/synth.hpp"

namespace msas::cli {

enum class Scheme { cfar_cielab, surf_cielab, dual_colormap };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name); // throws on unknown names

// Thrown for bad invocations (unknown scheme, empty manifest, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// normalize + dynamic range compression, the standard input conditioning.
GrayImage condition(const GrayImage& raw, double schlick_p);

RgbImage fuse_with_scheme(const ImagePair& pair, Scheme scheme, const FusionConfig& cfg);

// Flat JSON config; file values override built-in defaults. Unknown keys
// are rejected. Scene keys are read by the synth command, fusion keys by
// the rest; either group may appear in the same file.
void apply_config_file(const std::string& path, FusionConfig& fusion, SceneSpec& scene);

struct ManifestRow {
    std::string pair_id;
    std::string hf_path; // resolved against the manifest's directory
    std::string lf_path;
    double resolution_m_per_px = 0.0;
};

// Reads a CSV with header columns pair_id, hf_path, lf_path,
// resolution_m_per_px (extra columns ignored).
std::vector<ManifestRow> read_manifest(const std::string& path);

struct FuseOptions {
    std::string hf_path;
    std::string lf_path;
    std::string out_path;
    std::string config_path;      // optional
    std::string dump_saliency_dir; // optional debug output
    Scheme scheme = Scheme::cfar_cielab;
    std::optional<double> resolution;
    std::optional<double> alpha; // overrides the selected scheme's threshold
};

struct EvalOptions {
    std::string fused_path;
    std::string hf_path;
    std::string lf_path;
    std::string config_path; // optional
    std::string csv_path;    // optional
    std::optional<double> resolution;
};

struct BatchOptions {
    std::string manifest_path;
    std::string out_dir;
    std::string config_path; // optional
    std::vector<Scheme> schemes = {Scheme::cfar_cielab, Scheme::surf_cielab,
                                   Scheme::dual_colormap};
};

struct SynthOptions {
    std::string out_dir;
    std::string config_path; // optional
    int n = 1;
    std::uint64_t seed = 1;
    std::optional<int> size;
    std::optional<double> resolution;
};

// Conditions, fuses, writes the PNG. Throws on any failure (no partial
// output is left behind).
void cmd_fuse(const FuseOptions& opt);

// Prints the nine report fields to stdout, optionally writes a CSV row.
MetricsReport cmd_eval(const EvalOptions& opt);

// Fuses every manifest pair with every requested scheme, writes
// <pair_id>_<scheme>.png plus metrics.csv (rows ordered by pair id then
// scheme, one mean summary row per scheme). Per-pair failures are logged
// and skipped; returns the number of failed pairs.
int cmd_batch(const BatchOptions& opt);

// Writes hf_XXXX.png, lf_XXXX.png, mask_lf_XXXX.png, mask_hf_XXXX.png and
// manifest.csv for a seeded corpus.
void cmd_synth(const SynthOptions& opt);

// metrics.csv column order, also used by cmd_eval's optional CSV.
extern const char* kMetricsCsvHeader;

} // namespace msas::cli
