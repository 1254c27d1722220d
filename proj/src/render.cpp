#include "layervec/render.hpp"

#include <algorithm>
#include <cmath>

namespace layervec {

namespace {

double chord_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    return std::fabs(cross(ab, p - a)) / std::sqrt(len2);
}

void flatten(const CubicBezier& c, double tol, int depth, std::vector<Vec2>& out) {
    if (depth >= 16 ||
        (chord_dist(c.p1, c.p0, c.p3) <= tol && chord_dist(c.p2, c.p0, c.p3) <= tol)) {
        out.push_back(c.p3);
        return;
    }
    auto mid = [](Vec2 a, Vec2 b) { return Vec2{(a.x + b.x) / 2, (a.y + b.y) / 2}; };
    Vec2 p01 = mid(c.p0, c.p1), p12 = mid(c.p1, c.p2), p23 = mid(c.p2, c.p3);
    Vec2 p012 = mid(p01, p12), p123 = mid(p12, p23);
    Vec2 m = mid(p012, p123);
    flatten({c.p0, p01, p012, m}, tol, depth + 1, out);
    flatten({m, p123, p23, c.p3}, tol, depth + 1, out);
}

struct Edge {
    double x0, y0, x1, y1;  // y0 < y1, dir is the winding contribution
    int dir;
};

}  // namespace

RasterImage render_shapes(const std::vector<VectorShape>& shapes, int width, int height,
                          Rgb background) {
    RasterImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<size_t>(width) * height, background);

    std::vector<const VectorShape*> order;
    for (const VectorShape& s : shapes) order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const VectorShape* a, const VectorShape* b) {
                  return a->depth_rank > b->depth_rank;
              });

    for (const VectorShape* s : order) {
        std::vector<Edge> edges;
        for (const auto& loop : s->loops) {
            if (loop.empty()) continue;
            std::vector<Vec2> poly{loop[0].p0};
            for (const CubicBezier& c : loop) flatten(c, 0.25, 0, poly);
            for (size_t i = 0; i + 1 < poly.size(); ++i) {
                Vec2 a = poly[i], b = poly[i + 1];
                if (a.y == b.y) continue;
                if (a.y < b.y) edges.push_back({a.x, a.y, b.x, b.y, 1});
                else edges.push_back({b.x, b.y, a.x, a.y, -1});
            }
            // loops from fitting are closed; guard against drift
            if (!(poly.back() == poly.front())) {
                Vec2 a = poly.back(), b = poly.front();
                if (a.y != b.y) {
                    if (a.y < b.y) edges.push_back({a.x, a.y, b.x, b.y, 1});
                    else edges.push_back({b.x, b.y, a.x, a.y, -1});
                }
            }
        }
        if (edges.empty()) continue;

#pragma omp parallel for schedule(static)
        for (int y = 0; y < height; ++y) {
            double ys = y + 0.5;
            std::vector<std::pair<double, int>> xs;
            for (const Edge& e : edges) {
                if (ys < e.y0 || ys >= e.y1) continue;
                double x = e.x0 + (ys - e.y0) * (e.x1 - e.x0) / (e.y1 - e.y0);
                xs.push_back({x, e.dir});
            }
            if (xs.empty()) continue;
            std::sort(xs.begin(), xs.end());
            int winding = 0;
            for (size_t i = 0; i + 1 <= xs.size(); ++i) {
                winding += xs[i].second;
                if (winding == 0 || i + 1 == xs.size()) continue;
                double xa = xs[i].first, xb = xs[i + 1].first;
                int px0 = std::max(0, static_cast<int>(std::ceil(xa - 0.5)));
                int px1 = std::min(width, static_cast<int>(std::ceil(xb - 0.5)));
                for (int px = px0; px < px1; ++px) img.at(px, y) = s->fill;
            }
        }
    }
    return img;
}

ImageError image_error(const RasterImage& a, const RasterImage& b) {
    double sum = 0.0;
    size_t n = a.pixels.size();
    for (size_t i = 0; i < n; ++i) {
        double dr = double(a.pixels[i].r) - b.pixels[i].r;
        double dg = double(a.pixels[i].g) - b.pixels[i].g;
        double db = double(a.pixels[i].b) - b.pixels[i].b;
        sum += dr * dr + dg * dg + db * db;
    }
    ImageError e;
    e.mse = sum / (3.0 * static_cast<double>(n));
    e.psnr = e.mse > 0 ? 10.0 * std::log10(255.0 * 255.0 / e.mse) : 99.0;
    return e;
}

}  // namespace layervec
