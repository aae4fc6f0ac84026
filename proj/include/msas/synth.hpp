#pragma once

#include <cstdint>
#include <vector>

#include "msas/image.hpp"

namespace msas {

// Deterministic stream generator (splitmix64 core). All scene randomness
// flows through this so identical seeds give bit-identical rasters on any
// platform, which std:: distributions do not guarantee.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);    // [lo, hi)
    int uniform_int(int lo, int hi);         // inclusive
    double normal();                         // standard normal (Box-Muller)
    double gamma(double shape);              // unit scale, shape >= 1

private:
    std::uint64_t state_;
};

struct SceneSpec {
    std::uint64_t seed = 1;
    int width = 512;
    int height = 512;
    double resolution_m_per_px = 0.05;
    double ripple_wavelength_m = 2.0;
    double ripple_amplitude = 0.08;
    double ripple_orientation_rad = 0.6;
    int n_rocks = 8;   // HF-visible proud clutter
    int n_buried = 2;  // LF-only smooth targets
    int speckle_looks = 24;
};

struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryMask() = default;
    BinaryMask(int w, int h) : width(w), height(h), data(GrayImage::check_dims(w, h), 0) {}
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

struct GroundTruth {
    BinaryMask lf_saliency_mask; // buried-target pixels
    BinaryMask hf_detail_mask;   // rock / fine-structure pixels
};

struct Scene {
    ImagePair pair;
    GroundTruth truth;
    SceneSpec spec; // the (possibly varied) spec that produced the scene
};

// Builds one HF/LF pair: shared sinusoidal ripple bed; sharp glints with
// fine texture in HF at the rock mask; smooth bright blobs in LF at the
// buried mask; LF band-limited by 4x box downsample + bilinear upsample;
// per-band gamma speckle; then per-band normalize + dynamic range
// compression, the same conditioning real inputs receive.
Scene generate_scene(const SceneSpec& spec);

// Seeded field variation used by generate_corpus. Ranges:
//   ripple_wavelength_m     U[1.0, 3.0]
//   ripple_amplitude        U[0.05, 0.12]
//   ripple_orientation_rad  U[0, pi)
//   n_rocks                 U{4..12}
//   n_buried                U{1..4}
//   speckle_looks           U{16..32}
SceneSpec vary_spec(const SceneSpec& spec_template, std::uint64_t seed);

// n scenes with seeds base_seed .. base_seed+n-1, each generated from
// vary_spec(spec_template, seed).
std::vector<Scene> generate_corpus(int n, std::uint64_t base_seed,
                                   const SceneSpec& spec_template);

} // namespace msas
