#include "layervec/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "layervec/kernels.hpp"

namespace layervec {

namespace {

long cross_l(PixelCoord o, PixelCoord a, PixelCoord b) {
    return static_cast<long>(a.x - o.x) * (b.y - o.y) -
           static_cast<long>(a.y - o.y) * (b.x - o.x);
}

long dist2_l(PixelCoord a, PixelCoord b) {
    long dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Pixels of the mask with fewer than four set 4-neighbors.
std::vector<PixelCoord> boundary_pixels(const BoxMask& mask) {
    std::vector<PixelCoord> out;
    for (int y = mask.y0; y < mask.y1(); ++y)
        for (int x = mask.x0; x < mask.x1(); ++x) {
            if (!mask.at(x, y)) continue;
            if (!mask.at(x + 1, y) || !mask.at(x - 1, y) || !mask.at(x, y + 1) ||
                !mask.at(x, y - 1))
                out.push_back({x, y});
        }
    return out;
}

std::vector<PixelCoord> graham_scan(std::vector<PixelCoord> pts) {
    // pivot: lowest y, ties to the leftmost
    size_t piv = 0;
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].y < pts[piv].y || (pts[i].y == pts[piv].y && pts[i].x < pts[piv].x)) piv = i;
    std::swap(pts[0], pts[piv]);
    PixelCoord p0 = pts[0];

    // fully collinear input degenerates to a segment
    size_t far = 0;
    bool collinear = true;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (dist2_l(p0, pts[i]) > dist2_l(p0, pts[far])) far = i;
    }
    for (size_t i = 1; i < pts.size() && collinear; ++i)
        collinear = cross_l(p0, pts[far], pts[i]) == 0;
    if (collinear) return {p0, pts[far]};

    std::sort(pts.begin() + 1, pts.end(), [&](PixelCoord a, PixelCoord b) {
        long c = cross_l(p0, a, b);
        if (c != 0) return c > 0;
        return dist2_l(p0, a) < dist2_l(p0, b);
    });
    // points collinear with the pivot at the final angle must come far-to-near
    // so the strict-turn stack keeps only the farthest
    if (pts.size() > 2) {
        size_t i = pts.size() - 1;
        while (i > 1 && cross_l(p0, pts[i - 1], pts.back()) == 0) --i;
        std::reverse(pts.begin() + i, pts.end());
    }

    std::vector<PixelCoord> hull;
    for (const PixelCoord& p : pts) {
        while (hull.size() >= 2 && cross_l(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    // a fully collinear point set leaves hull as the farthest segment
    if (hull.size() > 2 && cross_l(hull[hull.size() - 2], hull.back(), hull[0]) == 0)
        hull.pop_back();
    return hull;
}

}  // namespace

HullPolygon convex_hull(const BoxMask& mask) {
    std::vector<PixelCoord> pts = boundary_pixels(mask);
    if (pts.empty()) throw StageError("geometry", "convex hull of an empty mask");

    HullPolygon h;
    if (pts.size() == 1) {
        h.vertices = pts;
    } else {
        h.vertices = graham_scan(std::move(pts));
    }

    int xa = h.vertices[0].x, xb = xa, ya = h.vertices[0].y, yb = ya;
    for (auto v : h.vertices) {
        xa = std::min(xa, v.x); xb = std::max(xb, v.x);
        ya = std::min(ya, v.y); yb = std::max(yb, v.y);
    }
    h.raster.x0 = xa;
    h.raster.y0 = ya;
    h.raster.bits = Mask(xb - xa + 1, yb - ya + 1, 0);
    kernels::fill_convex_omp(h.vertices, h.raster);
    h.raster_area = h.raster.count();
    return h;
}

double covered_area(const ShapeLayer& i, const HullPolygon& hull_j) {
    if (i.area <= 0) throw StageError("geometry", "covered_area of an empty layer");
    long inter = kernels::count_overlap_omp(i.mask, hull_j.raster);
    return static_cast<double>(inter) / static_cast<double>(i.area);
}

double depth_energy(const ShapeLayer& i, const HullPolygon& hull_i, const ShapeLayer& j,
                    const HullPolygon& hull_j) {
    return covered_area(i, hull_j) - covered_area(j, hull_i);
}

OrderingRelation classify(double d, double delta) {
    if (d > delta) return OrderingRelation::Above;
    if (d < -delta) return OrderingRelation::Below;
    return OrderingRelation::SameLevel;
}

long hull_symmetric_difference(const ShapeLayer& i, const ShapeLayer& j,
                               const HullPolygon& hull_j) {
    if (i.area <= 0 || j.area <= 0)
        throw StageError("geometry", "hull_symmetric_difference of an empty layer");
    long inter = kernels::count_overlap_omp(i.mask, hull_j.raster);
    return i.area + j.area - inter;
}

std::optional<OrderingRelation> subset_shortcut(const ShapeLayer& i, const HullPolygon& hull_j) {
    long inter = kernels::count_overlap_omp(i.mask, hull_j.raster);
    if (inter == i.area) return OrderingRelation::Above;
    return std::nullopt;
}

double bounding_triangle_area(double length, double theta0, double thetaL) {
    double s = std::sin(theta0 + thetaL);
    if (std::fabs(s) < 1e-12)
        throw StageError("geometry", "degenerate bounding triangle (theta0 + thetaL is 0 or pi)");
    return 0.5 * length * length * std::sin(theta0) * std::sin(thetaL) / s;
}

const HullPolygon& HullCache::hull(int layer) {
    auto& slot = hulls_[layer];
    if (!slot) slot = convex_hull(set_->layers[layer].mask);
    return *slot;
}

}  // namespace layervec
