#pragma once

#include <vector>

#include "layervec/depthgraph.hpp"
#include "layervec/layers.hpp"

namespace layervec {

struct ElasticaParams {
    double a = 0.1;          // arc-length weight
    double b = 1.0;          // squared-curvature weight
    double eps = 5.0;        // phase-transition width
    double c = 0.6;          // damping of the semi-implicit updates; must
                             // exceed `a` so the spectral symbols stay
                             // positive, and small values shorten the
                             // settling transient
    double tol = 1e-4;       // stop when max|u_next - u| < tol
    int max_iters = 2000;
    double level = 0.0;      // contour extraction level
    int corner_radius = 5;   // inpainting-corner disk radius (pixels)
    int tangent_window = 4;  // boundary samples per side for tangents
    int small_shape = 30;    // area below which the hull shortcut is used
};

/// Guidance disk at one inpainting endpoint: the boundary point where the
/// visible part of the layer boundary meets its occluded part, with the local
/// phase values that steer the diffusion (-1 keep out, 0 on the layer,
/// +1 extend here).
struct InpaintCorner {
    PixelCoord point;
    Vec2 pre_normal, post_normal;
    int radius = 0;
    int px0 = 0, py0 = 0;         // phase window origin
    Grid<std::int8_t> phase;      // -1/0/+1 inside the disk, 127 outside it
};

struct PhaseField {
    Grid<double> u;  // in [-1,1]; 1 on the layer, -1 outside the covered region
    Grid<double> v;  // auxiliary field of the splitting scheme
    bool converged = false;
    int iterations = 0;
};

struct InpaintedShape {
    Mask mask;
    std::vector<std::vector<Vec2>> contours;
};

/// Union of every layer ranked at or above `layer` plus the noise layer: the
/// only region the layer may be inpainted into.
Mask covered_region(int layer, const DepthOrdering& ordering, const LayerSet& set);

/// Fills holes of a mask: complement pixels unreachable from the frame border.
Mask fill_holes(const Mask& m);

/// Walks the layer boundary and finds the endpoints of the maximal boundary
/// arcs that lie on the covered region's boundary; each arc contributes its
/// two endpoints. Tangents are averaged over `window` boundary samples per
/// side; normals point away from the layer. Returns the corner list with
/// phase disks of radius r.
std::vector<InpaintCorner> find_corners(const ShapeLayer& layer, const Mask& covered, int r,
                                        int window);

/// Semi-implicit spectral solve of the damped double-well splitting scheme
/// under the hard constraints u=1 on the layer, u=-1 outside the covered
/// region. See the scheme notes in the implementation. When energy_trace is
/// given, the discrete energy of every projected iterate is appended to it.
PhaseField solve(const ShapeLayer& layer, const Mask& covered,
                 const std::vector<InpaintCorner>& corners, const ElasticaParams& params,
                 std::vector<double>* energy_trace = nullptr);

/// Hull-clip shortcut for small layers: Conv(S) intersected with the covered
/// region, no solve.
InpaintedShape small_shape_shortcut(const ShapeLayer& layer, const Mask& covered);

/// Marching-squares superlevel extraction of a solved field.
/// Throws StageError when {u > level} is empty.
InpaintedShape extract_contour(const PhaseField& pf, double level);

/// Discrete constrained inpainting energy of an iterate, used to monitor the
/// scheme: length + curvature terms over the covered region plus the corner
/// fitting terms.
double elastica_energy(const Grid<double>& u, const Mask& covered,
                       const std::vector<InpaintCorner>& corners, const ElasticaParams& params);

}  // namespace layervec
