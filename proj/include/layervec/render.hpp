#pragma once

#include <vector>

#include "layervec/bezier.hpp"

namespace layervec {

/// Flat-fill scanline rasterization of the shapes (deepest rank painted
/// first): cubics are flattened by adaptive subdivision to 0.25px, a pixel is
/// painted when its center lies inside the path under the nonzero winding
/// rule. Uncovered pixels stay `background`.
RasterImage render_shapes(const std::vector<VectorShape>& shapes, int width, int height,
                          Rgb background = {255, 255, 255});

/// Mean squared error over all channels and PSNR in dB (infinite MSE-0 case
/// reported as 99 dB).
struct ImageError {
    double mse = 0.0;
    double psnr = 0.0;
};
ImageError image_error(const RasterImage& a, const RasterImage& b);

}  // namespace layervec
