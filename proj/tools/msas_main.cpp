#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "msas/cli.hpp"

using namespace msas;

int main(int argc, char** argv) {
    CLI::App app{"msas - multiband sonar image fusion"};
    app.require_subcommand(1);

    // fuse
    cli::FuseOptions fuse_opt;
    std::string fuse_scheme = "cfar-cielab";
    double fuse_res = 0.0, fuse_alpha = 0.0;
    auto* fuse = app.add_subcommand("fuse", "fuse one HF/LF pair into a color composite");
    fuse->add_option("--hf", fuse_opt.hf_path, "HF grayscale PNG")->required();
    fuse->add_option("--lf", fuse_opt.lf_path, "LF grayscale PNG")->required();
    fuse->add_option("--scheme", fuse_scheme, "cfar-cielab | surf-cielab | dual-colormap")
        ->required();
    fuse->add_option("--out", fuse_opt.out_path, "output PNG path")->required();
    fuse->add_option("--config", fuse_opt.config_path, "JSON config file");
    auto* fr = fuse->add_option("--resolution", fuse_res, "meters per pixel");
    auto* fa = fuse->add_option("--alpha", fuse_alpha, "saliency threshold for the scheme");
    fuse->add_option("--dump-saliency", fuse_opt.dump_saliency_dir,
                     "directory for saliency map / keypoint debug dumps");

    // eval
    cli::EvalOptions eval_opt;
    double eval_res = 0.0;
    auto* eval = app.add_subcommand("eval", "similarity metrics of a fused image vs its pair");
    eval->add_option("--fused", eval_opt.fused_path, "fused RGB PNG")->required();
    eval->add_option("--hf", eval_opt.hf_path, "HF grayscale PNG")->required();
    eval->add_option("--lf", eval_opt.lf_path, "LF grayscale PNG")->required();
    eval->add_option("--config", eval_opt.config_path, "JSON config file");
    eval->add_option("--csv", eval_opt.csv_path, "also write the report as CSV");
    auto* er = eval->add_option("--resolution", eval_res, "meters per pixel");

    // batch
    cli::BatchOptions batch_opt;
    std::string batch_schemes = "all";
    auto* batch = app.add_subcommand("batch", "fuse + evaluate every pair in a manifest");
    batch->add_option("--manifest", batch_opt.manifest_path, "manifest CSV")->required();
    batch->add_option("--out", batch_opt.out_dir, "output directory")->required();
    batch->add_option("--schemes", batch_schemes, "'all' or comma-separated scheme names");
    batch->add_option("--config", batch_opt.config_path, "JSON config file");

    // synth
    cli::SynthOptions synth_opt;
    int synth_size = 0;
    double synth_res = 0.0;
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic HF/LF corpus");
    synth->add_option("--out", synth_opt.out_dir, "output directory")->required();
    synth->add_option("--n", synth_opt.n, "number of pairs");
    synth->add_option("--seed", synth_opt.seed, "base seed");
    auto* ss = synth->add_option("--size", synth_size, "square scene size in pixels");
    auto* sr = synth->add_option("--resolution", synth_res, "meters per pixel");
    synth->add_option("--config", synth_opt.config_path, "JSON config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fuse->parsed()) {
            fuse_opt.scheme = cli::parse_scheme(fuse_scheme);
            if (fr->count()) fuse_opt.resolution = fuse_res;
            if (fa->count()) fuse_opt.alpha = fuse_alpha;
            cli::cmd_fuse(fuse_opt);
        } else if (eval->parsed()) {
            if (er->count()) eval_opt.resolution = eval_res;
            cli::cmd_eval(eval_opt);
        } else if (batch->parsed()) {
            if (batch_schemes != "all") {
                batch_opt.schemes.clear();
                std::string rest = batch_schemes;
                while (!rest.empty()) {
                    const auto pos = rest.find(',');
                    batch_opt.schemes.push_back(cli::parse_scheme(rest.substr(0, pos)));
                    rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
                }
            }
            if (cli::cmd_batch(batch_opt) != 0)
                return 1;
        } else if (synth->parsed()) {
            if (ss->count()) synth_opt.size = synth_size;
            if (sr->count()) synth_opt.resolution = synth_res;
            cli::cmd_synth(synth_opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "msas: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
