#pragma once

#include <optional>
#include <vector>

#include "layervec/layers.hpp"

namespace layervec {

/// Convex hull of a pixel mask: minimal vertex polygon plus its raster.
/// Vertices are counterclockwise (cross(a,b) = ax*by - ay*bx > 0 turns) with
/// collinear points dropped. The raster counts every lattice point inside or
/// on the polygon, so the source mask is always contained in it.
struct HullPolygon {
    std::vector<PixelCoord> vertices;
    BoxMask raster;
    long raster_area = 0;
};

enum class OrderingRelation { Above, Below, SameLevel };

/// Graham scan over the mask's boundary pixels (start at lowest y, ties to
/// the leftmost; strict left turns only). Throws StageError on empty masks.
HullPolygon convex_hull(const BoxMask& mask);

/// Fraction of layer i lying inside the hull of layer j: |Conv(S_j) n S_i| / |S_i|.
double covered_area(const ShapeLayer& i, const HullPolygon& hull_j);

/// A(i,j) - A(j,i); positive means i is in front of j.
double depth_energy(const ShapeLayer& i, const HullPolygon& hull_i, const ShapeLayer& j,
                    const HullPolygon& hull_j);

/// Thresholded reading of the depth energy.
OrderingRelation classify(double d, double delta);

/// |S_i| + |S_j| - |Conv(S_j) n S_i| in pixels.
long hull_symmetric_difference(const ShapeLayer& i, const ShapeLayer& j,
                               const HullPolygon& hull_j);

/// Above when every pixel of S_i lies in Conv(S_j), otherwise empty.
std::optional<OrderingRelation> subset_shortcut(const ShapeLayer& i, const HullPolygon& hull_j);

/// Area of the triangle bounded by a gap chord of length `length` and the two
/// tangent extensions meeting it at angles theta0 and thetaL:
///   (L^2/2) * sin(theta0) sin(thetaL) / sin(theta0 + thetaL).
/// Throws StageError when theta0 + thetaL is 0 or pi (degenerate triangle).
double bounding_triangle_area(double length, double theta0, double thetaL);

/// Caches one hull per layer of a set.
class HullCache {
public:
    explicit HullCache(const LayerSet& set) : set_(&set), hulls_(set.layers.size()) {}
    const HullPolygon& hull(int layer);

private:
    const LayerSet* set_;
    std::vector<std::optional<HullPolygon>> hulls_;
};

}  // namespace layervec
