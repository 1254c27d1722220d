#include "layervec/contour.hpp"

#include <unordered_map>

namespace layervec {

namespace {

// Edge of the padded lattice: horizontal edges join (x,y)-(x+1,y), vertical
// edges join (x,y)-(x,y+1).
using EdgeKey = std::int64_t;

EdgeKey edge_key(int x, int y, bool vertical, int stride) {
    return ((static_cast<std::int64_t>(y) * stride + x) << 1) | (vertical ? 1 : 0);
}

struct Segment {
    EdgeKey entry, exit;
};

}  // namespace

std::vector<std::vector<Vec2>> marching_squares(const Grid<double>& field, double level) {
    int w = field.width(), h = field.height();
    int pw = w + 2, ph = h + 2;
    double pad = level - 1.0;
    auto val = [&](int px, int py) {
        if (px < 1 || py < 1 || px > w || py > h) return pad;
        return field.at(px - 1, py - 1);
    };
    auto inside = [&](int px, int py) { return val(px, py) > level; };

    // crossing position on an edge, in continuous image coordinates
    auto edge_pos = [&](int x, int y, bool vertical) {
        double a = val(x, y);
        double b = vertical ? val(x, y + 1) : val(x + 1, y);
        double t = (level - a) / (b - a);
        double px = vertical ? x : x + t;
        double py = vertical ? y + t : y;
        return Vec2{px - 0.5, py - 0.5};
    };

    std::vector<Segment> segments;
    std::unordered_map<EdgeKey, size_t> by_entry;
    std::unordered_map<EdgeKey, Vec2> pos;

    auto add = [&](int cx, int cy, int e_in, int e_out) {
        // edges of cell (cx,cy): 0=T, 1=R, 2=B, 3=L
        auto key_of = [&](int e) {
            switch (e) {
                case 0: return edge_key(cx, cy, false, pw);
                case 1: return edge_key(cx + 1, cy, true, pw);
                case 2: return edge_key(cx, cy + 1, false, pw);
                default: return edge_key(cx, cy, true, pw);
            }
        };
        auto pos_of = [&](int e) {
            switch (e) {
                case 0: return edge_pos(cx, cy, false);
                case 1: return edge_pos(cx + 1, cy, true);
                case 2: return edge_pos(cx, cy + 1, false);
                default: return edge_pos(cx, cy, true);
            }
        };
        EdgeKey ki = key_of(e_in), ko = key_of(e_out);
        pos.emplace(ki, pos_of(e_in));
        pos.emplace(ko, pos_of(e_out));
        by_entry.emplace(ki, segments.size());
        segments.push_back({ki, ko});
    };

    for (int cy = 0; cy < ph - 1; ++cy) {
        for (int cx = 0; cx < pw - 1; ++cx) {
            int c = (inside(cx, cy) ? 1 : 0) | (inside(cx + 1, cy) ? 2 : 0) |
                    (inside(cx + 1, cy + 1) ? 4 : 0) | (inside(cx, cy + 1) ? 8 : 0);
            constexpr int T = 0, R = 1, B = 2, L = 3;
            switch (c) {
                case 1: add(cx, cy, L, T); break;
                case 2: add(cx, cy, T, R); break;
                case 3: add(cx, cy, L, R); break;
                case 4: add(cx, cy, R, B); break;
                case 6: add(cx, cy, T, B); break;
                case 7: add(cx, cy, L, B); break;
                case 8: add(cx, cy, B, L); break;
                case 9: add(cx, cy, B, T); break;
                case 11: add(cx, cy, B, R); break;
                case 12: add(cx, cy, R, L); break;
                case 13: add(cx, cy, R, T); break;
                case 14: add(cx, cy, T, L); break;
                case 5: {
                    double mid = (val(cx, cy) + val(cx + 1, cy) + val(cx + 1, cy + 1) +
                                  val(cx, cy + 1)) / 4.0;
                    if (mid > level) {
                        add(cx, cy, R, T);
                        add(cx, cy, L, B);
                    } else {
                        add(cx, cy, L, T);
                        add(cx, cy, R, B);
                    }
                    break;
                }
                case 10: {
                    double mid = (val(cx, cy) + val(cx + 1, cy) + val(cx + 1, cy + 1) +
                                  val(cx, cy + 1)) / 4.0;
                    if (mid > level) {
                        add(cx, cy, T, L);
                        add(cx, cy, B, R);
                    } else {
                        add(cx, cy, T, R);
                        add(cx, cy, B, L);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    std::vector<std::vector<Vec2>> loops;
    std::vector<bool> used(segments.size(), false);
    for (size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        std::vector<Vec2> loop;
        size_t s = s0;
        while (!used[s]) {
            used[s] = true;
            loop.push_back(pos[segments[s].entry]);
            auto it = by_entry.find(segments[s].exit);
            if (it == by_entry.end()) break;  // cannot happen on a padded grid
            s = it->second;
        }
        // normalize to clockwise-on-screen outer loops
        std::reverse(loop.begin(), loop.end());
        std::vector<Vec2> clean;
        for (const Vec2& p : loop)
            if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
        while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
        if (clean.size() >= 3) loops.push_back(std::move(clean));
    }
    return loops;
}

std::vector<std::vector<Vec2>> contours_of_mask(const Mask& mask) {
    Grid<double> f(mask.width(), mask.height());
    for (size_t i = 0; i < mask.size(); ++i) f.data()[i] = mask.data()[i] ? 1.0 : -1.0;
    return marching_squares(f, 0.0);
}

std::vector<std::vector<PixelCoord>> boundary_walks(const Mask& mask) {
    // Re-run the stitching on the +/-1 field but record the inside pixel of
    // every crossing instead of its position.
    int w = mask.width(), h = mask.height();
    int pw = w + 2;
    auto inside = [&](int px, int py) {
        if (px < 1 || py < 1 || px > w || py > h) return false;
        return mask.at(px - 1, py - 1) != 0;
    };

    std::vector<Segment> segments;
    std::unordered_map<EdgeKey, size_t> by_entry;
    std::unordered_map<EdgeKey, PixelCoord> inner;

    auto add = [&](int cx, int cy, int e_in, int e_out) {
        auto key_of = [&](int e) {
            switch (e) {
                case 0: return edge_key(cx, cy, false, pw);
                case 1: return edge_key(cx + 1, cy, true, pw);
                case 2: return edge_key(cx, cy + 1, false, pw);
                default: return edge_key(cx, cy, true, pw);
            }
        };
        auto inner_of = [&](int e) {
            int ax = cx, ay = cy, bx, by;
            switch (e) {
                case 0: bx = cx + 1; by = cy; break;
                case 1: ax = cx + 1; ay = cy; bx = cx + 1; by = cy + 1; break;
                case 2: ay = cy + 1; bx = cx + 1; by = cy + 1; break;
                default: bx = cx; by = cy + 1; break;
            }
            if (inside(ax, ay)) return PixelCoord{ax - 1, ay - 1};
            return PixelCoord{bx - 1, by - 1};
        };
        EdgeKey ki = key_of(e_in), ko = key_of(e_out);
        inner.emplace(ki, inner_of(e_in));
        inner.emplace(ko, inner_of(e_out));
        by_entry.emplace(ki, segments.size());
        segments.push_back({ki, ko});
    };

    for (int cy = 0; cy < h + 1; ++cy) {
        for (int cx = 0; cx < w + 1; ++cx) {
            int c = (inside(cx, cy) ? 1 : 0) | (inside(cx + 1, cy) ? 2 : 0) |
                    (inside(cx + 1, cy + 1) ? 4 : 0) | (inside(cx, cy + 1) ? 8 : 0);
            constexpr int T = 0, R = 1, B = 2, L = 3;
            switch (c) {
                case 1: add(cx, cy, L, T); break;
                case 2: add(cx, cy, T, R); break;
                case 3: add(cx, cy, L, R); break;
                case 4: add(cx, cy, R, B); break;
                case 6: add(cx, cy, T, B); break;
                case 7: add(cx, cy, L, B); break;
                case 8: add(cx, cy, B, L); break;
                case 9: add(cx, cy, B, T); break;
                case 11: add(cx, cy, B, R); break;
                case 12: add(cx, cy, R, L); break;
                case 13: add(cx, cy, R, T); break;
                case 14: add(cx, cy, T, L); break;
                // binary field: saddles split as two opposite corners
                case 5:
                    add(cx, cy, L, T);
                    add(cx, cy, R, B);
                    break;
                case 10:
                    add(cx, cy, T, R);
                    add(cx, cy, B, L);
                    break;
                default: break;
            }
        }
    }

    std::vector<std::vector<PixelCoord>> walks;
    std::vector<bool> used(segments.size(), false);
    for (size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        std::vector<PixelCoord> walk;
        size_t s = s0;
        while (!used[s]) {
            used[s] = true;
            walk.push_back(inner[segments[s].entry]);
            auto it = by_entry.find(segments[s].exit);
            if (it == by_entry.end()) break;
            s = it->second;
        }
        std::reverse(walk.begin(), walk.end());
        std::vector<PixelCoord> clean;
        for (const PixelCoord& p : walk)
            if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
        while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
        if (!clean.empty()) walks.push_back(std::move(clean));
    }
    return walks;
}

}  // namespace layervec
