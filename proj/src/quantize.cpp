#include "layervec/quantize.hpp"

#include <cmath>
#include <unordered_set>

#include "layervec/kernels.hpp"

namespace layervec {

namespace {

// Distinct colors in first-occurrence scan order.
std::vector<Rgb> distinct_colors(const RasterImage& img) {
    std::vector<Rgb> out;
    std::unordered_set<std::uint32_t> seen;
    for (const Rgb& p : img.pixels)
        if (seen.insert(pack(p)).second) out.push_back(p);
    return out;
}

double dist2(Rgb a, const std::array<double, 3>& c) {
    double dr = a.r - c[0], dg = a.g - c[1], db = a.b - c[2];
    return dr * dr + dg * dg + db * db;
}

}  // namespace

int distinct_color_count(const RasterImage& img) {
    return static_cast<int>(distinct_colors(img).size());
}

QuantizedImage kmeans_quantize(const RasterImage& img, int k, std::uint64_t seed,
                               int max_iters) {
    if (k < 1) throw StageError("quantize", "K must be at least 1");
    std::vector<Rgb> distinct = distinct_colors(img);
    if (k > static_cast<int>(distinct.size()))
        throw StageError("quantize", "K exceeds the number of distinct colors (" +
                                         std::to_string(distinct.size()) + ")");

    // Farthest-point seeding over the distinct colors; the seed picks the
    // first centroid, every later one maximizes the min distance to the
    // chosen set (ties to the earliest occurrence).
    std::vector<std::array<double, 3>> centroids;
    centroids.reserve(k);
    {
        size_t first = static_cast<size_t>(seed % distinct.size());
        Rgb c0 = distinct[first];
        centroids.push_back({double(c0.r), double(c0.g), double(c0.b)});
        std::vector<double> min_d(distinct.size());
        for (size_t i = 0; i < distinct.size(); ++i) min_d[i] = dist2(distinct[i], centroids[0]);
        while (static_cast<int>(centroids.size()) < k) {
            size_t far = 0;
            for (size_t i = 1; i < distinct.size(); ++i)
                if (min_d[i] > min_d[far]) far = i;
            Rgb c = distinct[far];
            centroids.push_back({double(c.r), double(c.g), double(c.b)});
            for (size_t i = 0; i < distinct.size(); ++i)
                min_d[i] = std::min(min_d[i], dist2(distinct[i], centroids.back()));
        }
    }

    size_t n = img.pixels.size();
    std::vector<std::uint16_t> labels(n, 0xFFFF);
    kernels::assign_nearest_omp(img.pixels.data(), n, centroids.data(), k, labels.data());

    for (int iter = 0; iter < max_iters; ++iter) {
        // Per-row partial sums merged in row order: the result does not
        // depend on the thread count.
        int h = img.height, w = img.width;
        std::vector<std::array<double, 4>> row_acc(static_cast<size_t>(h) * k, {0, 0, 0, 0});
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            auto* acc = &row_acc[static_cast<size_t>(y) * k];
            for (int x = 0; x < w; ++x) {
                size_t i = static_cast<size_t>(y) * w + x;
                auto& a = acc[labels[i]];
                a[0] += img.pixels[i].r;
                a[1] += img.pixels[i].g;
                a[2] += img.pixels[i].b;
                a[3] += 1.0;
            }
        }
        for (int j = 0; j < k; ++j) {
            std::array<double, 4> s{0, 0, 0, 0};
            for (int y = 0; y < h; ++y)
                for (int q = 0; q < 4; ++q) s[q] += row_acc[static_cast<size_t>(y) * k + j][q];
            if (s[3] > 0) centroids[j] = {s[0] / s[3], s[1] / s[3], s[2] / s[3]};
            // empty cluster keeps its previous centroid
        }
        long changed =
            kernels::assign_nearest_omp(img.pixels.data(), n, centroids.data(), k, labels.data());
        if (changed == 0) break;
    }

    QuantizedImage out;
    out.width = img.width;
    out.height = img.height;
    out.labels = Grid<std::uint16_t>(img.width, img.height);
    std::copy(labels.begin(), labels.end(), out.labels.data());
    out.palette.colors.reserve(k);
    for (auto& c : centroids)
        out.palette.colors.push_back({static_cast<std::uint8_t>(std::lround(c[0])),
                                      static_cast<std::uint8_t>(std::lround(c[1])),
                                      static_cast<std::uint8_t>(std::lround(c[2]))});

    // Rounding can in principle collapse two centroids to one 8-bit entry;
    // merge such labels onto the lowest index so palette colors stay distinct.
    std::vector<std::uint16_t> remap(k);
    std::vector<Rgb> uniq;
    for (int j = 0; j < k; ++j) {
        int hit = -1;
        for (size_t q = 0; q < uniq.size(); ++q)
            if (uniq[q] == out.palette.colors[j]) { hit = static_cast<int>(q); break; }
        if (hit < 0) {
            remap[j] = static_cast<std::uint16_t>(uniq.size());
            uniq.push_back(out.palette.colors[j]);
        } else {
            remap[j] = static_cast<std::uint16_t>(hit);
        }
    }
    if (static_cast<int>(uniq.size()) != k) {
        out.palette.colors = std::move(uniq);
        for (size_t i = 0; i < out.labels.size(); ++i)
            out.labels.data()[i] = remap[out.labels.data()[i]];
    }
    return out;
}

}  // namespace layervec
