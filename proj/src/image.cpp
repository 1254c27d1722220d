#include "layervec/image.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

namespace layervec {

RasterImage QuantizedImage::to_raster() const {
    RasterImage out;
    out.width = width;
    out.height = height;
    out.pixels.resize(static_cast<size_t>(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) out.at(x, y) = color_at(x, y);
    return out;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

RasterImage load_png(const std::string& path, std::FILE* fp) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw StageError("load", "libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw StageError("load", "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw StageError("load", "corrupt or truncated PNG: " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    png_set_strip_16(png);
    png_set_packing(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_gray_to_rgb(png);
    png_set_add_alpha(png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(png, info);

    int w = static_cast<int>(png_get_image_width(png, info));
    int h = static_cast<int>(png_get_image_height(png, info));
    if (w < 1 || h < 1) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw StageError("load", "zero-dimension PNG: " + path);
    }

    std::vector<std::uint8_t> raw(static_cast<size_t>(w) * h * 4);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = raw.data() + static_cast<size_t>(y) * w * 4;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        const std::uint8_t* p = raw.data() + i * 4;
        // composite over white
        int a = p[3];
        img.pixels[i].r = static_cast<std::uint8_t>((p[0] * a + 255 * (255 - a) + 127) / 255);
        img.pixels[i].g = static_cast<std::uint8_t>((p[1] * a + 255 * (255 - a) + 127) / 255);
        img.pixels[i].b = static_cast<std::uint8_t>((p[2] * a + 255 * (255 - a) + 127) / 255);
    }
    return img;
}

int ppm_next_int(std::FILE* fp) {
    int c = std::fgetc(fp);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(fp);
        } else if (!std::isspace(c)) {
            break;
        }
        c = std::fgetc(fp);
    }
    if (c == EOF || !std::isdigit(c)) throw StageError("load", "malformed PPM header");
    int v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        c = std::fgetc(fp);
    }
    return v;
}

RasterImage load_ppm(const std::string& path, std::FILE* fp) {
    char magic[2];
    if (std::fread(magic, 1, 2, fp) != 2 || magic[0] != 'P' || magic[1] != '6')
        throw StageError("load", "unsupported raster format: " + path);
    int w = ppm_next_int(fp);
    int h = ppm_next_int(fp);
    int maxval = ppm_next_int(fp);
    if (w < 1 || h < 1) throw StageError("load", "zero-dimension PPM: " + path);
    if (maxval <= 0 || maxval > 255) throw StageError("load", "only 8-bit PPM supported: " + path);

    RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<size_t>(w) * h);
    std::vector<std::uint8_t> raw(img.pixels.size() * 3);
    if (std::fread(raw.data(), 1, raw.size(), fp) != raw.size())
        throw StageError("load", "truncated PPM: " + path);
    for (size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = {raw[i * 3], raw[i * 3 + 1], raw[i * 3 + 2]};
    return img;
}

}  // namespace

RasterImage load_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw StageError("load", "cannot open file: " + path);

    unsigned char sig[8];
    size_t n = std::fread(sig, 1, 8, fp.get());
    std::rewind(fp.get());
    if (n >= 8 && png_sig_cmp(sig, 0, 8) == 0) return load_png(path, fp.get());
    if (n >= 2 && sig[0] == 'P' && sig[1] == '6') return load_ppm(path, fp.get());
    throw StageError("load", "unsupported raster format: " + path);
}

namespace {

void write_png(const std::string& path, int w, int h, int color_type, int bit_depth,
               const std::vector<png_bytep>& rows) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw StageError("dump", "cannot write file: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw StageError("dump", "PNG write failed: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, w, h, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, const_cast<png_bytep*>(rows.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

void save_png_gray(const std::string& path, const Grid<std::uint8_t>& g) {
    std::vector<png_bytep> rows(g.height());
    for (int y = 0; y < g.height(); ++y)
        rows[y] = const_cast<png_bytep>(g.data() + static_cast<size_t>(y) * g.width());
    write_png(path, g.width(), g.height(), PNG_COLOR_TYPE_GRAY, 8, rows);
}

void save_png_mask(const std::string& path, const BoxMask& m, int width, int height) {
    int stride = (width + 7) / 8;
    std::vector<std::uint8_t> packed(static_cast<size_t>(stride) * height, 0);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (m.at(x, y)) packed[static_cast<size_t>(y) * stride + x / 8] |= 0x80 >> (x % 8);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) rows[y] = packed.data() + static_cast<size_t>(y) * stride;
    write_png(path, width, height, PNG_COLOR_TYPE_GRAY, 1, rows);
}

void save_png_rgb(const std::string& path, const RasterImage& img) {
    std::vector<std::uint8_t> raw(static_cast<size_t>(img.width) * img.height * 3);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        raw[i * 3] = img.pixels[i].r;
        raw[i * 3 + 1] = img.pixels[i].g;
        raw[i * 3 + 2] = img.pixels[i].b;
    }
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = raw.data() + static_cast<size_t>(y) * img.width * 3;
    write_png(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 8, rows);
}

}  // namespace layervec
