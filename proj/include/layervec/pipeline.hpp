#pragma once

#include <string>
#include <vector>

#include "layervec/depthgraph.hpp"
#include "layervec/elastica.hpp"
#include "layervec/quantize.hpp"
#include "layervec/render.hpp"
#include "layervec/svgout.hpp"

namespace layervec {

struct PipelineConfig {
    int colors = 16;              // quantization palette size (clamped to the
                                  // distinct color count of the input)
    double delta = 0.05;          // depth-energy threshold
    long noise_area = 10;         // max area of a noise component
    bool grouping = false;        // run grouping quantization
    double mu = 0.75;             // grouping perimeter weight
    int max_phases = 6;           // grouping phase cap
    bool group_same_color = false;
    ElasticaParams elastica;
    double kappa_threshold = 1.25;
    double fit_tol = 1.0;
    int curv_step = 3;
    std::uint64_t seed = 0;
    int kmeans_iters = 100;
    int jobs = 0;                 // OpenMP threads, 0 = library default
    bool include_noise = false;   // vectorize the noise layer on top
    bool stroke = false;          // debug outlines in the SVG
    std::string dump_layers;      // directory for per-layer mask PNGs
    std::string dump_graph;       // path for the depth-graph text dump
    std::string dump_fields;      // directory for per-layer field PNGs
};

struct StageTime {
    std::string name;
    double seconds = 0.0;
};

struct PipelineReport {
    std::vector<StageTime> stages;
    int layer_count = 0;
    int noise_components = 0;
    long bezier_segments = 0;
    double mse = 0.0;
    double psnr = 0.0;
    std::string svg;
    std::string summary() const;
};

/// Full pipeline: quantize, split into layers, order by depth, convexify each
/// layer inside its covered region, fit curves, and emit the SVG. Any stage
/// error surfaces as a StageError naming the stage.
PipelineReport run_pipeline(const RasterImage& input, const PipelineConfig& cfg);

/// File-to-file variant; writes the SVG to out_path.
PipelineReport run_pipeline_file(const std::string& in_path, const std::string& out_path,
                                 const PipelineConfig& cfg);

}  // namespace layervec
