#pragma once

#include <array>
#include <cstdint>

#include "layervec/grid.hpp"
#include "layervec/image.hpp"

// Data-parallel inner loops, each in a serial reference version and an
// OpenMP version. The two must produce bit-identical results; tests compare
// them and benchmarks/bench_kernels times them. Production code calls the
// *_omp variants.
namespace layervec::kernels {

/// Nearest-centroid assignment (squared RGB distance, ties to the lowest
/// centroid index). Returns the number of labels that changed.
long assign_nearest_serial(const Rgb* px, size_t n, const std::array<double, 3>* centroids,
                           int k, std::uint16_t* labels);
long assign_nearest_omp(const Rgb* px, size_t n, const std::array<double, 3>* centroids,
                        int k, std::uint16_t* labels);

/// Rasterizes a convex polygon with integer vertices (counterclockwise,
/// cross(a,b) = ax*by - ay*bx > 0 turns) into `out`, which must already be
/// sized to the polygon's bounding window. Lattice points on the boundary
/// count as inside. Degenerate polygons (point, segment) are handled.
void fill_convex_serial(const std::vector<PixelCoord>& poly, BoxMask& out);
void fill_convex_omp(const std::vector<PixelCoord>& poly, BoxMask& out);

/// Number of lattice points set in both masks.
long count_overlap_serial(const BoxMask& a, const BoxMask& b);
long count_overlap_omp(const BoxMask& a, const BoxMask& b);

/// Pointwise right-hand side of the auxiliary-field update:
///   rhs = cw*u - cb - (b/eps^2)*(12u^2 - 4)*v + c*v
/// where cw/cb fold the corner fitting terms.
void elastica_rhs_v_serial(const double* u, const double* v, const double* cw, const double* cb,
                           double b_over_eps2, double c, double* rhs, size_t n);
void elastica_rhs_v_omp(const double* u, const double* v, const double* cw, const double* cb,
                        double b_over_eps2, double c, double* rhs, size_t n);

/// Pointwise right-hand side of the phase-field update:
///   rhs = -v - (4u^3 - 4u)*inv2eps + c*u
void elastica_rhs_u_serial(const double* u, const double* v, double inv2eps, double c,
                           double* rhs, size_t n);
void elastica_rhs_u_omp(const double* u, const double* v, double inv2eps, double c,
                        double* rhs, size_t n);

/// Applies the constraint projection (u=1 on pin_s, u=-1 on pin_o, clamp to
/// [-1,1]) to u_new and returns max|u_new - u_old| after projection.
double project_maxdiff_serial(double* u_new, const double* u_old, const std::uint8_t* pin_s,
                              const std::uint8_t* pin_o, size_t n);
double project_maxdiff_omp(double* u_new, const double* u_old, const std::uint8_t* pin_s,
                           const std::uint8_t* pin_o, size_t n);

}  // namespace layervec::kernels
