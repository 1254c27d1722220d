#pragma once

#include "layervec/image.hpp"

namespace layervec {

/// K-means color quantization in RGB space.
///
/// Deterministic for a given (img, K, seed, max_iters): centroids are seeded
/// farthest-point style starting from the seed-selected distinct color, pixel
/// assignment breaks ties toward the lowest centroid index, and iteration
/// stops when no assignment changes or at max_iters. Final centroids are
/// rounded to 8-bit palette entries.
///
/// Throws StageError if K exceeds the number of distinct colors in img.
QuantizedImage kmeans_quantize(const RasterImage& img, int k, std::uint64_t seed,
                               int max_iters = 100);

/// Number of distinct RGB values in the image.
int distinct_color_count(const RasterImage& img);

}  // namespace layervec
