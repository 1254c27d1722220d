#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "layervec/grid.hpp"

namespace layervec {

/// Error carrying the pipeline stage it came from.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(Rgb a, Rgb b) { return a.r == b.r && a.g == b.g && a.b == b.b; }
    friend bool operator<(Rgb a, Rgb b) {
        if (a.r != b.r) return a.r < b.r;
        if (a.g != b.g) return a.g < b.g;
        return a.b < b.b;
    }
};

inline std::uint32_t pack(Rgb c) {
    return (std::uint32_t(c.r) << 16) | (std::uint32_t(c.g) << 8) | c.b;
}

struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;  // row-major

    Rgb at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
};

struct Palette {
    std::vector<Rgb> colors;
    int size() const { return static_cast<int>(colors.size()); }
};

struct QuantizedImage {
    int width = 0;
    int height = 0;
    Grid<std::uint16_t> labels;  // indices into palette
    Palette palette;

    Rgb color_at(int x, int y) const { return palette.colors[labels.at(x, y)]; }
    RasterImage to_raster() const;
};

/// Decodes a PNG or binary PPM (P6) file. PNG alpha is composited over white.
RasterImage load_image(const std::string& path);

/// Writers used by the CLI dump flags.
void save_png_gray(const std::string& path, const Grid<std::uint8_t>& g);
void save_png_mask(const std::string& path, const BoxMask& m, int width, int height);
void save_png_rgb(const std::string& path, const RasterImage& img);

}  // namespace layervec
