#pragma once

#include <string>
#include <vector>

#include "layervec/bezier.hpp"

namespace layervec {

/// Serializes the shapes into an SVG 1.1 document, deepest rank first so
/// later paths paint over earlier ones. One <path> per shape; multi-loop
/// shapes put all loops in one d attribute (fill-rule nonzero); coordinates
/// are printed with 2 decimals. `stroke` adds 0.5px outlines for debugging.
std::string emit_svg(const std::vector<VectorShape>& shapes, int width, int height,
                     bool stroke = false);

}  // namespace layervec
