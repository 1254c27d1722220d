#pragma once

#include <cstdint>
#include <vector>

#include "layervec/image.hpp"
#include "layervec/layers.hpp"

namespace layervec::fixtures {

/// splitmix64; deterministic across platforms.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    double unit() { return (next() >> 11) * 0x1.0p-53; }
};

/// Paint-order scene painter: later calls draw over earlier ones.
struct Canvas {
    RasterImage img;
    Canvas(int w, int h, Rgb bg);
    void fill_rect(int x0, int y0, int x1, int y1, Rgb c);       // half-open
    void fill_disk(double cx, double cy, double r, Rgb c);
    void fill_ellipse(double cx, double cy, double rx, double ry, Rgb c);
    void fill_poly(const std::vector<Vec2>& pts, Rgb c);          // even-odd
};

/// Reconstructed mountain scene: green background with a spiked horizon,
/// yellow sky, orange sun behind the right ridge, white cloud through the
/// ridge saddle and over the sun, tall left mountain in front of the cloud
/// with a white cap. Painted back to front, five colors, seven layers.
RasterImage mountain_scene(int w = 240, int h = 180);

/// Expected depth chain of mountain_scene, top to bottom, as layer roles:
/// cap, left mountain, cloud, right mountain, sun, sky, background.
/// Returns the layer ids of the extracted set in that role order.
std::vector<int> mountain_role_ids(const LayerSet& set);

/// Three equal disks overlapping in a cycle (red over green over blue over
/// red); the red-green overlap is slightly smaller so its cut wins cycle
/// breaking outright.
RasterImage three_disk_scene(int size = 140);

/// Orange triangle occluded by a blue triangle, leaving three orange corners.
RasterImage kanizsa_scene(int size = 200);

/// Two overlapping rectangles, one biting the other's flank.
RasterImage rect_overlap_scene();

/// Seeded blob collage on a plain background, at most 8 colors.
RasterImage blob_scene(int w, int h, std::uint64_t seed);

/// Random blob mask on a w x h grid (union of a few disks/rects), nonempty.
Mask random_mask(int w, int h, Rng& rng);

/// Disjoint pair of random masks on one grid, both nonempty.
std::pair<Mask, Mask> random_disjoint_pair(int w, int h, Rng& rng);

/// Convex blob with a thin surrounding ring, disjoint; blob lies inside the
/// ring's hull.
struct RingFixture {
    Mask inner;
    Mask ring;
};
RingFixture ring_around_convex(int size, Rng& rng);

/// Disk with a wedge notch (angular width in degrees, centered on +x) and
/// the full disk as its covered region.
struct NotchFixture {
    Mask shape;
    Mask covered;
    double cx, cy, radius;
};
NotchFixture notched_disk(int size, double radius, double wedge_deg);

/// Disk truncated above a chord so the boundary meets the chord at angle
/// theta = acos(h_over_r) on both sides; covered region is the full disk.
struct OneSidedFixture {
    Mask shape;
    Mask covered;
    double cx, cy, radius;
    double chord_y;     // gap lies at y < chord_y
    double theta;       // radians
    double x0, xL;      // chord endpoints
};
OneSidedFixture one_sided_gap(int size, double radius, double h_over_r);

/// Builds a ShapeLayer from a full-frame mask (id/color 0 unless set).
ShapeLayer layer_of(const Mask& m, int id = 0, int color = 0);

}  // namespace layervec::fixtures
