#include "layervec/layers.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace layervec {

namespace {

constexpr int kNbr4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

// 4-connected component labeling in scan order; returns component id per
// pixel and the component count.
std::pair<Grid<int>, int> label_components(const Grid<std::uint16_t>& labels) {
    int w = labels.width(), h = labels.height();
    Grid<int> comp(w, h, -1);
    int next = 0;
    std::vector<PixelCoord> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (comp.at(x, y) >= 0) continue;
            int id = next++;
            std::uint16_t lab = labels.at(x, y);
            comp.at(x, y) = id;
            stack.push_back({x, y});
            while (!stack.empty()) {
                PixelCoord p = stack.back();
                stack.pop_back();
                for (auto& d : kNbr4) {
                    int nx = p.x + d[0], ny = p.y + d[1];
                    if (!labels.in_bounds(nx, ny)) continue;
                    if (comp.at(nx, ny) >= 0 || labels.at(nx, ny) != lab) continue;
                    comp.at(nx, ny) = id;
                    stack.push_back({nx, ny});
                }
            }
        }
    }
    return {std::move(comp), next};
}

BoxMask box_from_pixels(const std::vector<PixelCoord>& px) {
    int xa = px[0].x, xb = px[0].x, ya = px[0].y, yb = px[0].y;
    for (auto p : px) {
        xa = std::min(xa, p.x); xb = std::max(xb, p.x);
        ya = std::min(ya, p.y); yb = std::max(yb, p.y);
    }
    BoxMask m;
    m.x0 = xa;
    m.y0 = ya;
    m.bits = Mask(xb - xa + 1, yb - ya + 1, 0);
    for (auto p : px) m.bits.at(p.x - xa, p.y - ya) = 1;
    return m;
}

// Map from pixel to layer index (-1 where no layer covers it). Only valid for
// non-grouped sets.
Grid<int> build_label_map(const LayerSet& set) {
    Grid<int> map(set.width, set.height, -1);
    for (const ShapeLayer& l : set.layers)
        for (int y = l.mask.y0; y < l.mask.y1(); ++y)
            for (int x = l.mask.x0; x < l.mask.x1(); ++x)
                if (l.mask.at(x, y)) map.at(x, y) = l.id;
    return map;
}

}  // namespace

LayerSet extract_layers(const QuantizedImage& q, bool group_same_color) {
    LayerSet set;
    set.width = q.width;
    set.height = q.height;
    set.palette = q.palette;

    auto [comp, ncomp] = label_components(q.labels);
    std::vector<std::vector<PixelCoord>> pixels(ncomp);
    std::vector<int> comp_color(ncomp, 0);
    for (int y = 0; y < q.height; ++y)
        for (int x = 0; x < q.width; ++x) {
            int c = comp.at(x, y);
            pixels[c].push_back({x, y});
            comp_color[c] = q.labels.at(x, y);
        }

    if (!group_same_color) {
        set.layers.reserve(ncomp);
        for (int c = 0; c < ncomp; ++c) {
            ShapeLayer l;
            l.id = c;
            l.color_index = comp_color[c];
            l.mask = box_from_pixels(pixels[c]);
            l.area = static_cast<long>(pixels[c].size());
            set.layers.push_back(std::move(l));
        }
    } else {
        // one layer per label, in the scan order of each label's first pixel
        std::vector<int> label_order;
        std::vector<std::vector<PixelCoord>> label_pixels(q.palette.size());
        for (int c = 0; c < ncomp; ++c) {
            int lab = comp_color[c];
            if (label_pixels[lab].empty()) label_order.push_back(lab);
            label_pixels[lab].insert(label_pixels[lab].end(), pixels[c].begin(),
                                     pixels[c].end());
        }
        for (size_t i = 0; i < label_order.size(); ++i) {
            int lab = label_order[i];
            ShapeLayer l;
            l.id = static_cast<int>(i);
            l.color_index = lab;
            l.mask = box_from_pixels(label_pixels[lab]);
            l.area = static_cast<long>(label_pixels[lab].size());
            set.layers.push_back(std::move(l));
        }
    }
    return set;
}

LayerSet detect_noise(const LayerSet& set, long noise_area) {
    Grid<int> map = build_label_map(set);
    std::vector<bool> noisy(set.layers.size(), false);

    for (const ShapeLayer& l : set.layers) {
        if (l.area > noise_area) continue;
        std::set<int> nbr_colors;
        for (int y = l.mask.y0; y < l.mask.y1(); ++y)
            for (int x = l.mask.x0; x < l.mask.x1(); ++x) {
                if (!l.mask.at(x, y)) continue;
                for (auto& d : kNbr4) {
                    int nx = x + d[0], ny = y + d[1];
                    if (!map.in_bounds(nx, ny)) continue;
                    int o = map.at(nx, ny);
                    if (o >= 0 && o != l.id) nbr_colors.insert(set.layers[o].color_index);
                }
            }
        if (nbr_colors.size() >= 2) noisy[l.id] = true;
    }

    LayerSet out;
    out.width = set.width;
    out.height = set.height;
    out.palette = set.palette;
    out.noise.mask = Mask(set.width, set.height, 0);
    for (const ShapeLayer& l : set.layers) {
        if (noisy[l.id]) {
            out.noise.components.push_back(l.mask);
            out.noise.component_colors.push_back(l.color_index);
            for (int y = l.mask.y0; y < l.mask.y1(); ++y)
                for (int x = l.mask.x0; x < l.mask.x1(); ++x)
                    if (l.mask.at(x, y)) out.noise.mask.at(x, y) = 1;
        } else {
            ShapeLayer kept = l;
            kept.id = static_cast<int>(out.layers.size());
            out.layers.push_back(std::move(kept));
        }
    }
    if (out.layers.empty())
        throw StageError("detect_noise",
                         "all layers classified as noise; lower the noise area threshold");
    if (out.noise.components.empty()) out.noise.mask = Mask();
    return out;
}

namespace {

// Aggregates for one segmentation phase of the grouping energy.
struct Phase {
    long area = 0;
    long perimeter = 0;  // 4-neighbor edges to differently labeled pixels
    double sum[3] = {0, 0, 0};
    double sumsq = 0;
    bool alive() const { return area > 0; }
    double data_term() const {
        if (area == 0) return 0.0;
        double m = (sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]) / area;
        return sumsq - m;
    }
};

double grouping_energy(const std::vector<Phase>& phases, double mu) {
    double ratio = 0, per = 0, data = 0;
    for (const Phase& p : phases) {
        if (!p.alive()) continue;
        ratio += double(p.perimeter) / double(p.area);
        per += double(p.perimeter);
        data += p.data_term();
    }
    return mu * ratio * per + data;
}

}  // namespace

LayerSet grouping_quantize(const QuantizedImage& q, const LayerSet& set, double mu,
                           int max_phases) {
    if (mu <= 0) throw StageError("grouping", "mu must be positive");
    if (max_phases < 1) throw StageError("grouping", "max_phases must be at least 1");
    int w = q.width, h = q.height;

    // f is the quantized image: per-pixel palette RGB
    auto fr = [&](int x, int y) { return q.color_at(x, y); };

    Grid<int> phase_of(w, h, 0);
    std::vector<Phase> phases(1);
    phases[0].area = static_cast<long>(w) * h;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            Rgb c = fr(x, y);
            phases[0].sum[0] += c.r;
            phases[0].sum[1] += c.g;
            phases[0].sum[2] += c.b;
            phases[0].sumsq += double(c.r) * c.r + double(c.g) * c.g + double(c.b) * c.b;
        }

    auto alive_count = [&] {
        int n = 0;
        for (const Phase& p : phases) n += p.alive();
        return n;
    };

    auto move_pixel = [&](int x, int y, int to) {
        int from = phase_of.at(x, y);
        if (from == to) return;
        Rgb c = fr(x, y);
        double cc[3] = {double(c.r), double(c.g), double(c.b)};
        double sq = cc[0] * cc[0] + cc[1] * cc[1] + cc[2] * cc[2];
        // edges to third phases are counted from the neighbor's side both
        // before and after, so only the from/to perimeters change
        int n_in_from = 0, n_in_to = 0, n_total = 0;
        for (auto& d : kNbr4) {
            int nx = x + d[0], ny = y + d[1];
            if (!phase_of.in_bounds(nx, ny)) continue;
            ++n_total;
            int pn = phase_of.at(nx, ny);
            n_in_from += pn == from;
            n_in_to += pn == to;
        }
        phases[from].area -= 1;
        phases[from].sum[0] -= cc[0];
        phases[from].sum[1] -= cc[1];
        phases[from].sum[2] -= cc[2];
        phases[from].sumsq -= sq;
        phases[from].perimeter += n_in_from - (n_total - n_in_from);
        phases[to].area += 1;
        phases[to].sum[0] += cc[0];
        phases[to].sum[1] += cc[1];
        phases[to].sum[2] += cc[2];
        phases[to].sumsq += sq;
        phases[to].perimeter += (n_total - n_in_to) - n_in_to;
        phase_of.at(x, y) = to;
    };

    // Merging two phases (all pixels of b join a) is evaluated on the
    // aggregates; the pixel sweep alone can strand small remnant phases in
    // single-move local minima, and a merge pass dissolves them.
    const double kImprove = 1e-9;
    auto try_merges = [&] {
        bool merged_any = false;
        while (true) {
            double e_cur = grouping_energy(phases, mu);
            int best_a = -1, best_b = -1;
            double e_best = e_cur;
            for (int a = 0; a < static_cast<int>(phases.size()); ++a) {
                if (!phases[a].alive()) continue;
                for (int b = a + 1; b < static_cast<int>(phases.size()); ++b) {
                    if (!phases[b].alive()) continue;
                    long shared = 0;
                    for (int y = 0; y < h; ++y)
                        for (int x = 0; x < w; ++x) {
                            int p = phase_of.at(x, y);
                            if (p != a && p != b) continue;
                            if (x + 1 < w) {
                                int q = phase_of.at(x + 1, y);
                                shared += (p == a && q == b) || (p == b && q == a);
                            }
                            if (y + 1 < h) {
                                int q = phase_of.at(x, y + 1);
                                shared += (p == a && q == b) || (p == b && q == a);
                            }
                        }
                    std::vector<Phase> trial = phases;
                    trial[a].area += trial[b].area;
                    trial[a].perimeter += trial[b].perimeter - 2 * shared;
                    for (int q = 0; q < 3; ++q) trial[a].sum[q] += trial[b].sum[q];
                    trial[a].sumsq += trial[b].sumsq;
                    trial[b] = Phase{};
                    double e = grouping_energy(trial, mu);
                    if (e < e_best - kImprove) {
                        e_best = e;
                        best_a = a;
                        best_b = b;
                    }
                }
            }
            if (best_a < 0) break;
            merged_any = true;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    if (phase_of.at(x, y) == best_b) phase_of.at(x, y) = best_a;
            // recompute the merged phase's perimeter exactly
            Phase& pa = phases[best_a];
            Phase& pb = phases[best_b];
            pa.area += pb.area;
            for (int q = 0; q < 3; ++q) pa.sum[q] += pb.sum[q];
            pa.sumsq += pb.sumsq;
            pb = Phase{};
            long per = 0;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    if (phase_of.at(x, y) != best_a) continue;
                    if (x + 1 < w && phase_of.at(x + 1, y) != best_a) ++per;
                    if (x > 0 && phase_of.at(x - 1, y) != best_a) ++per;
                    if (y + 1 < h && phase_of.at(x, y + 1) != best_a) ++per;
                    if (y > 0 && phase_of.at(x, y - 1) != best_a) ++per;
                }
            pa.perimeter = per;
        }
        return merged_any;
    };

    // Raster-order sweeps to a fixed point; each accepted move strictly
    // lowers the energy, which bounds the number of rounds.
    bool changed = true;
    int sweeps = 0;
    while (changed && sweeps < 1000) {
        changed = false;
        ++sweeps;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                int cur = phase_of.at(x, y);
                double e_cur = grouping_energy(phases, mu);
                int best = cur;
                double e_best = e_cur;
                for (int cand = 0; cand < static_cast<int>(phases.size()); ++cand) {
                    if (cand == cur || !phases[cand].alive()) continue;
                    move_pixel(x, y, cand);
                    double e = grouping_energy(phases, mu);
                    move_pixel(x, y, cur);
                    if (e < e_best - kImprove) {
                        e_best = e;
                        best = cand;
                    }
                }
                if (alive_count() < max_phases && phases[cur].area > 1) {
                    phases.emplace_back();
                    int fresh = static_cast<int>(phases.size()) - 1;
                    move_pixel(x, y, fresh);
                    double e = grouping_energy(phases, mu);
                    move_pixel(x, y, cur);
                    if (e < e_best - kImprove) {
                        e_best = e;
                        best = fresh;
                    } else {
                        phases.pop_back();
                    }
                }
                if (best != cur) {
                    move_pixel(x, y, best);
                    changed = true;
                }
            }
        }
        if (!changed && try_merges()) changed = true;
    }

    // Components of each alive phase become the grouped candidate layers.
    struct Candidate {
        std::vector<PixelCoord> pixels;
        int color = 0;
    };
    std::vector<Candidate> cands;
    {
        Grid<std::uint16_t> as_labels(w, h);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                as_labels.at(x, y) = static_cast<std::uint16_t>(phase_of.at(x, y));
        auto [comp, ncomp] = label_components(as_labels);
        std::vector<Candidate> by_comp(ncomp);
        std::vector<std::map<int, long>> hist(ncomp);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                int c = comp.at(x, y);
                by_comp[c].pixels.push_back({x, y});
                hist[c][q.labels.at(x, y)] += 1;
            }
        for (int c = 0; c < ncomp; ++c) {
            long best = -1;
            for (auto& [lab, n] : hist[c])
                if (n > best) {
                    best = n;
                    by_comp[c].color = lab;
                }
            cands.push_back(std::move(by_comp[c]));
        }
    }

    // Drop original layers that are subsets of a same-colored component.
    std::vector<BoxMask> cand_masks;
    cand_masks.reserve(cands.size());
    for (auto& c : cands) cand_masks.push_back(box_from_pixels(c.pixels));

    auto is_subset = [](const BoxMask& a, const BoxMask& b) {
        if (a.x0 < b.x0 || a.y0 < b.y0 || a.x1() > b.x1() || a.y1() > b.y1()) return false;
        for (int y = a.y0; y < a.y1(); ++y)
            for (int x = a.x0; x < a.x1(); ++x)
                if (a.at(x, y) && !b.at(x, y)) return false;
        return true;
    };

    LayerSet out;
    out.width = w;
    out.height = h;
    out.palette = set.palette;
    out.noise = set.noise;
    out.grouped = true;
    out.grouping_phases = alive_count();
    for (const ShapeLayer& l : set.layers) {
        bool redundant = false;
        for (size_t c = 0; c < cands.size(); ++c)
            if (cands[c].color == l.color_index && is_subset(l.mask, cand_masks[c])) {
                redundant = true;
                break;
            }
        if (!redundant) {
            ShapeLayer kept = l;
            kept.id = static_cast<int>(out.layers.size());
            out.layers.push_back(std::move(kept));
        }
    }
    for (size_t c = 0; c < cands.size(); ++c) {
        ShapeLayer l;
        l.id = static_cast<int>(out.layers.size());
        l.color_index = cands[c].color;
        l.mask = std::move(cand_masks[c]);
        l.area = static_cast<long>(cands[c].pixels.size());
        l.from_grouping = true;
        out.layers.push_back(std::move(l));
    }
    return out;
}

std::vector<std::pair<int, int>> adjacent_pairs(const LayerSet& set) {
    std::set<std::pair<int, int>> pairs;
    if (!set.grouped) {
        Grid<int> map = build_label_map(set);
        for (int y = 0; y < set.height; ++y)
            for (int x = 0; x < set.width; ++x) {
                int a = map.at(x, y);
                if (a < 0) continue;
                if (x + 1 < set.width) {
                    int b = map.at(x + 1, y);
                    if (b >= 0 && b != a) pairs.insert({std::min(a, b), std::max(a, b)});
                }
                if (y + 1 < set.height) {
                    int b = map.at(x, y + 1);
                    if (b >= 0 && b != a) pairs.insert({std::min(a, b), std::max(a, b)});
                }
            }
    } else {
        // grouped masks can overlap; adjacency = masks touch or overlap
        int n = static_cast<int>(set.layers.size());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const BoxMask& a = set.layers[i].mask;
                const BoxMask& b = set.layers[j].mask;
                int xa = std::max(a.x0, b.x0 - 1), xb = std::min(a.x1(), b.x1() + 1);
                int ya = std::max(a.y0, b.y0 - 1), yb = std::min(a.y1(), b.y1() + 1);
                bool touch = false;
                for (int y = ya; y < yb && !touch; ++y)
                    for (int x = xa; x < xb && !touch; ++x)
                        if (a.at(x, y) &&
                            (b.at(x, y) || b.at(x + 1, y) || b.at(x - 1, y) || b.at(x, y + 1) ||
                             b.at(x, y - 1)))
                            touch = true;
                if (touch) pairs.insert({i, j});
            }
    }
    return {pairs.begin(), pairs.end()};
}

Mask layer_full_mask(const LayerSet& set, int layer) {
    Mask m(set.width, set.height, 0);
    const BoxMask& bm = set.layers[layer].mask;
    for (int y = bm.y0; y < bm.y1(); ++y)
        for (int x = bm.x0; x < bm.x1(); ++x)
            if (bm.at(x, y)) m.at(x, y) = 1;
    return m;
}

}  // namespace layervec
