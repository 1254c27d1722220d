#pragma once

#include <vector>

#include "layervec/grid.hpp"
#include "layervec/image.hpp"

namespace layervec {

struct CubicBezier {
    Vec2 p0, p1, p2, p3;
    Vec2 eval(double t) const {
        double s = 1.0 - t;
        double b0 = s * s * s, b1 = 3 * s * s * t, b2 = 3 * s * t * t, b3 = t * t * t;
        return {b0 * p0.x + b1 * p1.x + b2 * p2.x + b3 * p3.x,
                b0 * p0.y + b1 * p1.y + b2 * p2.y + b3 * p3.y};
    }
};

struct VectorShape {
    std::vector<std::vector<CubicBezier>> loops;  // each closed
    Rgb fill;
    int depth_rank = 0;
};

/// Circumscribed-circle curvature at every contour point from the two
/// h-step chords (indices modulo the loop length); coincident sample triples
/// give 0.
std::vector<double> discrete_curvature(const std::vector<Vec2>& contour, int h);

/// Split indices: within every maximal circular run of |curvature| above the
/// threshold, the local maxima (plateaus keep their first index). Falls back
/// to {0} when nothing exceeds the threshold. Returned sorted.
std::vector<int> find_extrema(const std::vector<double>& curvature, double threshold);

/// Least-squares cubic through the points: endpoints pinned to the first and
/// last point, chord-length parameters, free inner control points. Degenerate
/// systems fall back to the straight segment with control points at thirds.
CubicBezier fit_segment(const std::vector<Vec2>& points);

/// Splits the closed contour at the curvature extrema and fits each arc,
/// recursively subdividing at the worst point while the points-to-curve
/// Hausdorff distance (curve sampled at 64 points) exceeds the tolerance.
std::vector<CubicBezier> fit_contour(const std::vector<Vec2>& contour, double kappa_threshold,
                                     double fit_tol, int h);

/// One-sided Hausdorff distance from the points to the curve sampled at
/// n_samples points.
double hausdorff_points_to_curve(const std::vector<Vec2>& points, const CubicBezier& curve,
                                 int n_samples = 64);

}  // namespace layervec
