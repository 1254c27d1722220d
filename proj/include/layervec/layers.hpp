#pragma once

#include <vector>

#include "layervec/image.hpp"

namespace layervec {

struct ShapeLayer {
    int id = 0;
    int color_index = 0;
    BoxMask mask;
    long area = 0;
    bool from_grouping = false;  // injected by grouping_quantize
};

struct NoiseLayer {
    Mask mask;  // full-frame union of noisy components (empty grid when none)
    std::vector<BoxMask> components;
    std::vector<int> component_colors;  // palette index per component
    bool empty() const { return components.empty(); }
};

struct LayerSet {
    int width = 0;
    int height = 0;
    Palette palette;
    std::vector<ShapeLayer> layers;
    NoiseLayer noise;
    bool grouped = false;     // true after grouping_quantize (masks may overlap)
    int grouping_phases = 0;  // alive segmentation phases used by grouping
};

/// Splits the quantized image into shape layers. With group_same_color off,
/// every 4-connected same-label component becomes one layer (ids in scan
/// order of the first pixel); with it on, all components of each label are
/// merged into a single layer per label. The noise layer starts empty.
LayerSet extract_layers(const QuantizedImage& q, bool group_same_color = false);

/// Moves components that are small (area <= noise_area) and 4-adjacent to at
/// least two differently colored layers into the noise layer. Surviving
/// layers are renumbered contiguously. Classification of each component
/// depends only on its own area and neighborhood in the input set.
/// Throws StageError when every layer classifies as noise.
LayerSet detect_noise(const LayerSet& set, long noise_area);

/// Augments the layer set with coarse segmentation phases: minimizes a
/// perimeter-balanced multiphase energy by raster-order pixel sweeps (moves a
/// pixel to an existing phase, a new phase while fewer than max_phases are
/// alive, or keeps it) until a sweep changes nothing. Each phase's connected
/// components join the set as grouped layers colored by the histogram-mode
/// palette color over their pixels; original layers that are subsets of a
/// component with the same color are dropped as redundant.
/// The result's layer masks may overlap; together they still cover the frame.
LayerSet grouping_quantize(const QuantizedImage& q, const LayerSet& set, double mu,
                           int max_phases);

/// Unordered pairs of layers sharing a 4-neighborhood boundary (or, for
/// grouped sets, overlapping). Pairs are (i,j) with i < j, sorted.
std::vector<std::pair<int, int>> adjacent_pairs(const LayerSet& set);

/// Full-frame mask of one layer's pixels.
Mask layer_full_mask(const LayerSet& set, int layer);

}  // namespace layervec
