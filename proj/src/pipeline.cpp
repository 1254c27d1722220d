#include "layervec/pipeline.hpp"

#include <omp.h>

#include "layervec/contour.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <type_traits>

namespace layervec {

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StageTime>& sink) : sink_(sink) {}

    template <typename F>
    auto run(const std::string& name, F&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            if constexpr (std::is_void_v<decltype(fn())>) {
                fn();
                record(name, t0);
            } else {
                auto out = fn();
                record(name, t0);
                return out;
            }
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
    }

private:
    void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        sink_.push_back({name, s});
    }
    std::vector<StageTime>& sink_;
};

std::string color_hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

}  // namespace

std::string PipelineReport::summary() const {
    std::string out;
    char buf[128];
    for (const StageTime& st : stages) {
        std::snprintf(buf, sizeof(buf), "%-18s %8.3f s\n", st.name.c_str(), st.seconds);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "layers: %d (noise components: %d)\n", layer_count,
                  noise_components);
    out += buf;
    std::snprintf(buf, sizeof(buf), "bezier segments: %ld\n", bezier_segments);
    out += buf;
    std::snprintf(buf, sizeof(buf), "self-check MSE: %.2f  PSNR: %.2f dB\n", mse, psnr);
    out += buf;
    return out;
}

PipelineReport run_pipeline(const RasterImage& input, const PipelineConfig& cfg) {
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

    PipelineReport report;
    StageClock clock(report.stages);

    QuantizedImage q = clock.run("quantize", [&] {
        int k = std::min(cfg.colors, distinct_color_count(input));
        return kmeans_quantize(input, k, cfg.seed, cfg.kmeans_iters);
    });

    LayerSet set = clock.run("extract_layers",
                             [&] { return extract_layers(q, cfg.group_same_color); });
    set = clock.run("detect_noise", [&] { return detect_noise(set, cfg.noise_area); });
    if (cfg.grouping)
        set = clock.run("grouping_quantize",
                        [&] { return grouping_quantize(q, set, cfg.mu, cfg.max_phases); });

    report.layer_count = static_cast<int>(set.layers.size());
    report.noise_components = static_cast<int>(set.noise.components.size());

    if (!cfg.dump_layers.empty()) {
        for (const ShapeLayer& l : set.layers)
            save_png_mask(cfg.dump_layers + "/layer_" + std::to_string(l.id) + "_" +
                              color_hex(set.palette.colors[l.color_index]) + ".png",
                          l.mask, set.width, set.height);
    }

    HullCache hulls(set);
    DepthGraph graph = clock.run(
        "build_graph", [&] { return build_graph(set, cfg.delta, PairSelection::Auto, hulls); });
    clock.run("break_cycles", [&] { break_cycles(graph, set, hulls); });
    DepthOrdering ordering = clock.run("topo_sort", [&] { return topo_sort(graph, set); });

    if (!cfg.dump_graph.empty()) {
        std::ofstream f(cfg.dump_graph);
        f << "# edges: from to D\n";
        for (const DepthEdge& e : graph.edges)
            if (!e.removed) f << e.from << " " << e.to << " " << e.d << "\n";
        f << "# removed: from to V\n";
        for (const RemovedEdge& e : graph.removed)
            f << e.from << " " << e.to << " " << e.v << "\n";
    }

    int n_layers = static_cast<int>(set.layers.size());
    std::vector<InpaintedShape> inpainted(n_layers);
    clock.run("inpaint", [&] {
        // layers are independent; each solve owns its buffers and plans
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n_layers; ++i) {
            const ShapeLayer& layer = set.layers[i];
            Mask covered = covered_region(i, ordering, set);
            if (layer.area < cfg.elastica.small_shape) {
                inpainted[i] = small_shape_shortcut(layer, covered);
            } else {
                auto corners = find_corners(layer, covered, cfg.elastica.corner_radius,
                                            cfg.elastica.tangent_window);
                PhaseField pf = solve(layer, covered, corners, cfg.elastica);
                if (!cfg.dump_fields.empty()) {
                    Grid<std::uint8_t> g(pf.u.width(), pf.u.height());
                    for (size_t p = 0; p < pf.u.size(); ++p)
                        g.data()[p] = static_cast<std::uint8_t>(
                            std::lround((pf.u.data()[p] + 1.0) * 127.5));
#pragma omp critical
                    save_png_gray(cfg.dump_fields + "/field_" + std::to_string(layer.id) +
                                      ".png", g);
                }
                inpainted[i] = extract_contour(pf, cfg.elastica.level);
            }
        }
    });

    std::vector<VectorShape> shapes(n_layers);
    clock.run("fit", [&] {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n_layers; ++i) {
            VectorShape& vs = shapes[i];
            vs.fill = set.palette.colors[set.layers[i].color_index];
            vs.depth_rank = ordering.rank[i];
            for (const auto& loop : inpainted[i].contours) {
                if (loop.size() < 3) continue;
                vs.loops.push_back(
                    fit_contour(loop, cfg.kappa_threshold, cfg.fit_tol, cfg.curv_step));
            }
        }
        if (cfg.include_noise) {
            for (size_t c = 0; c < set.noise.components.size(); ++c) {
                Mask full(set.width, set.height, 0);
                const BoxMask& bm = set.noise.components[c];
                for (int y = bm.y0; y < bm.y1(); ++y)
                    for (int x = bm.x0; x < bm.x1(); ++x)
                        if (bm.at(x, y)) full.at(x, y) = 1;
                VectorShape vs;
                vs.fill = set.palette.colors[set.noise.component_colors[c]];
                vs.depth_rank = -1 - static_cast<int>(c);  // stacked on top
                for (const auto& loop : contours_of_mask(full))
                    if (loop.size() >= 3)
                        vs.loops.push_back(
                            fit_contour(loop, cfg.kappa_threshold, cfg.fit_tol, cfg.curv_step));
                shapes.push_back(std::move(vs));
            }
        }
    });

    for (const VectorShape& vs : shapes)
        for (const auto& loop : vs.loops) report.bezier_segments += loop.size();

    report.svg = clock.run("emit", [&] {
        return emit_svg(shapes, set.width, set.height, cfg.stroke);
    });

    clock.run("self_check", [&] {
        RasterImage rendered = render_shapes(shapes, set.width, set.height);
        ImageError err = image_error(rendered, q.to_raster());
        report.mse = err.mse;
        report.psnr = err.psnr;
    });

    return report;
}

PipelineReport run_pipeline_file(const std::string& in_path, const std::string& out_path,
                                 const PipelineConfig& cfg) {
    PipelineReport report;
    {
        std::vector<StageTime> load_time;
        StageClock clock(load_time);
        RasterImage img = clock.run("load", [&] { return load_image(in_path); });
        PipelineReport inner = run_pipeline(img, cfg);
        inner.stages.insert(inner.stages.begin(), load_time.begin(), load_time.end());
        report = std::move(inner);
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw StageError("emit", "cannot write output file: " + out_path);
    out << report.svg;
    if (!out) throw StageError("emit", "failed writing output file: " + out_path);
    return report;
}

}  // namespace layervec
