#pragma once

#include <vector>

#include "layervec/grid.hpp"

namespace layervec {

/// Marching-squares isocontours of a scalar field sampled at pixel centers.
///
/// Returns closed loops in continuous image coordinates (pixel (x,y) has its
/// center at (x+0.5, y+0.5)). The field is padded with level-1 outside the
/// frame so superlevel regions touching the border close along it. Outer
/// loops wind clockwise on screen (y down); hole loops wind the other way.
/// Saddle cells are split by the cell-center average.
std::vector<std::vector<Vec2>> marching_squares(const Grid<double>& field, double level);

/// Contours of a binary mask via a +/-1 field at level 0; loops run along
/// pixel boundaries.
std::vector<std::vector<Vec2>> contours_of_mask(const Mask& mask);

/// Ordered boundary-pixel walks of a mask, one per contour loop: the inside
/// pixel of every boundary crossing in loop order, consecutive duplicates
/// removed. Used for corner detection and tangent estimation.
std::vector<std::vector<PixelCoord>> boundary_walks(const Mask& mask);

}  // namespace layervec
