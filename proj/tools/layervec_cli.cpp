#include <CLI11.hpp>

#include <cstdio>

#include "layervec/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"layervec: raster image to depth-ordered layered SVG"};

    std::string input, output = "out.svg";
    layervec::PipelineConfig cfg;

    app.add_option("input", input, "input image (PNG or binary PPM)")->required();
    app.add_option("-o,--output", output, "output SVG path");
    app.add_option("--colors", cfg.colors, "quantization palette size")->check(CLI::PositiveNumber);
    app.add_option("--delta", cfg.delta, "depth ordering threshold");
    app.add_option("--noise-area", cfg.noise_area, "max pixel area of a noise component");
    app.add_flag("--grouping", cfg.grouping, "run grouping quantization before ordering");
    app.add_option("--mu", cfg.mu, "grouping perimeter weight");
    app.add_option("--max-phases", cfg.max_phases, "grouping phase cap");
    app.add_flag("--group-same-color", cfg.group_same_color,
                 "merge all same-color components into one layer");
    app.add_option("--elastica-a", cfg.elastica.a, "arc-length weight");
    app.add_option("--elastica-b", cfg.elastica.b, "curvature weight");
    app.add_option("--epsilon", cfg.elastica.eps, "phase transition width");
    app.add_option("--tikhonov", cfg.elastica.c, "update damping");
    app.add_option("--tol", cfg.elastica.tol, "solver convergence tolerance");
    app.add_option("--max-iters", cfg.elastica.max_iters, "solver iteration cap");
    app.add_option("--level", cfg.elastica.level, "contour extraction level");
    app.add_option("--corner-radius", cfg.elastica.corner_radius, "corner disk radius");
    app.add_option("--kappa-threshold", cfg.kappa_threshold, "curvature extremum threshold");
    app.add_option("--fit-tol", cfg.fit_tol, "curve fit Hausdorff tolerance");
    app.add_option("--curv-step", cfg.curv_step, "curvature sampling step");
    app.add_option("--seed", cfg.seed, "quantization seed");
    app.add_option("--small-shape", cfg.elastica.small_shape,
                   "area below which layers take the hull shortcut");
    app.add_option("--jobs", cfg.jobs, "worker thread cap (0 = default)");
    app.add_flag("--include-noise", cfg.include_noise, "vectorize the noise layer on top");
    app.add_flag("--stroke", cfg.stroke, "add 0.5px debug outlines");
    app.add_option("--dump-layers", cfg.dump_layers, "directory for layer mask PNGs");
    app.add_option("--dump-graph", cfg.dump_graph, "path for the depth graph dump");
    app.add_option("--dump-fields", cfg.dump_fields, "directory for phase field PNGs");

    CLI11_PARSE(app, argc, argv);

    try {
        layervec::PipelineReport report = layervec::run_pipeline_file(input, output, cfg);
        std::fputs(report.summary().c_str(), stdout);
        std::printf("wrote %s\n", output.c_str());
    } catch (const layervec::StageError& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.stage().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
