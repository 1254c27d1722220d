#pragma once

#include <cstdint>
#include <vector>
#include <cassert>
#include <algorithm>
#include <cmath>

namespace layervec {

struct PixelCoord {
    int x = 0;
    int y = 0;
    friend bool operator==(PixelCoord a, PixelCoord b) { return a.x == b.x && a.y == b.y; }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// Row-major 2D array.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(static_cast<size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

    T& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
    const T& at(int x, int y) const { return data_[static_cast<size_t>(y) * width_ + x]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    size_t size() const { return data_.size(); }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using Mask = Grid<std::uint8_t>;

/// Binary mask stored on its bounding window; reads outside the window are 0.
struct BoxMask {
    int x0 = 0;
    int y0 = 0;
    Mask bits;

    int width() const { return bits.width(); }
    int height() const { return bits.height(); }
    int x1() const { return x0 + bits.width(); }   // exclusive
    int y1() const { return y0 + bits.height(); }  // exclusive

    bool at(int x, int y) const {
        if (x < x0 || y < y0 || x >= x1() || y >= y1()) return false;
        return bits.at(x - x0, y - y0) != 0;
    }
    void set(int x, int y, bool v = true) { bits.at(x - x0, y - y0) = v ? 1 : 0; }

    long count() const {
        long n = 0;
        for (size_t i = 0; i < bits.size(); ++i) n += bits.data()[i] != 0;
        return n;
    }
};

/// Tightens a full-frame mask to its bounding window. Mask must be nonempty.
inline BoxMask crop_to_box(const Mask& full) {
    int xa = full.width(), ya = full.height(), xb = -1, yb = -1;
    for (int y = 0; y < full.height(); ++y)
        for (int x = 0; x < full.width(); ++x)
            if (full.at(x, y)) {
                xa = std::min(xa, x); xb = std::max(xb, x);
                ya = std::min(ya, y); yb = std::max(yb, y);
            }
    assert(xb >= 0);
    BoxMask bm;
    bm.x0 = xa;
    bm.y0 = ya;
    bm.bits = Mask(xb - xa + 1, yb - ya + 1, 0);
    for (int y = ya; y <= yb; ++y)
        for (int x = xa; x <= xb; ++x)
            if (full.at(x, y)) bm.bits.at(x - xa, y - ya) = 1;
    return bm;
}

}  // namespace layervec
