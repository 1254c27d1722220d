#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace layervec::fixtures {

Canvas::Canvas(int w, int h, Rgb bg) {
    img.width = w;
    img.height = h;
    img.pixels.assign(static_cast<size_t>(w) * h, bg);
}

void Canvas::fill_rect(int x0, int y0, int x1, int y1, Rgb c) {
    x0 = std::max(0, x0); y0 = std::max(0, y0);
    x1 = std::min(img.width, x1); y1 = std::min(img.height, y1);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) img.at(x, y) = c;
}

void Canvas::fill_disk(double cx, double cy, double r, Rgb c) {
    fill_ellipse(cx, cy, r, r, c);
}

void Canvas::fill_ellipse(double cx, double cy, double rx, double ry, Rgb c) {
    int x0 = std::max(0, (int)std::floor(cx - rx)), x1 = std::min(img.width - 1, (int)std::ceil(cx + rx));
    int y0 = std::max(0, (int)std::floor(cy - ry)), y1 = std::min(img.height - 1, (int)std::ceil(cy + ry));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            double dx = (x - cx) / rx, dy = (y - cy) / ry;
            if (dx * dx + dy * dy <= 1.0) img.at(x, y) = c;
        }
}

void Canvas::fill_poly(const std::vector<Vec2>& pts, Rgb c) {
    double ymin = pts[0].y, ymax = pts[0].y;
    for (const Vec2& p : pts) { ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y); }
    int y0 = std::max(0, (int)std::floor(ymin)), y1 = std::min(img.height - 1, (int)std::ceil(ymax));
    size_t n = pts.size();
    for (int y = y0; y <= y1; ++y) {
        double yc = y;  // test at lattice points, matching the disk painters
        std::vector<double> xs;
        for (size_t i = 0; i < n; ++i) {
            Vec2 a = pts[i], b = pts[(i + 1) % n];
            if ((a.y <= yc && b.y > yc) || (b.y <= yc && a.y > yc))
                xs.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
        }
        std::sort(xs.begin(), xs.end());
        for (size_t i = 0; i + 1 < xs.size(); i += 2) {
            int xa = std::max(0, (int)std::ceil(xs[i]));
            int xb = std::min(img.width - 1, (int)std::floor(xs[i + 1]));
            for (int x = xa; x <= xb; ++x) img.at(x, y) = c;
        }
    }
}

namespace {
const Rgb kBlack{20, 20, 20};
const Rgb kOrange{235, 140, 30};
const Rgb kYellow{250, 225, 150};
const Rgb kWhite{250, 250, 250};
const Rgb kGreen{70, 160, 60};
}  // namespace

RasterImage mountain_scene(int w, int h) {
    Canvas cv(w, h, kGreen);
    auto X = [&](double f) { return f * w; };
    auto Y = [&](double f) { return f * h; };

    // sky over the background, leaving a green strip plus a tall thin spike
    // whose hull pulls the background's hull into the sky
    cv.fill_rect(0, 0, w, (int)Y(0.72), kYellow);
    cv.fill_poly({{X(0.055), Y(0.74)}, {X(0.0875), Y(0.30)}, {X(0.12), Y(0.74)}}, kGreen);

    // sun, drawn first so the right mountain's apex wedge bites into it;
    // the apex lies inside the disk, leaving a concave visible crescent
    cv.fill_disk(X(0.66), Y(0.19), 0.105 * w, kOrange);

    // right mountain: floats above the snow band, clear of the left mountain
    cv.fill_poly({{X(0.50), Y(0.75)}, {X(0.66), Y(0.10)}, {X(0.96), Y(0.75)}}, kBlack);

    // snow band across the valley floor; the left mountain will bite into it
    cv.fill_rect((int)X(0.055), (int)Y(0.76), (int)X(0.97), (int)Y(0.88), kWhite);

    // left mountain, in front of the band
    cv.fill_poly({{X(0.10), Y(0.84)}, {X(0.26), Y(0.14)}, {X(0.46), Y(0.84)}}, kBlack);

    // snow patch on the left mountain's face
    cv.fill_ellipse(X(0.26), Y(0.46), 0.045 * w, 0.06 * h, kWhite);

    return cv.img;
}

std::vector<int> mountain_role_ids(const LayerSet& set) {
    // roles located by color and geometry: cap, left mountain, cloud,
    // right mountain, sun, sky, background
    auto color_of = [&](const ShapeLayer& l) { return set.palette.colors[l.color_index]; };
    auto is = [&](const ShapeLayer& l, Rgb c) {
        Rgb k = color_of(l);
        int d = std::abs(k.r - c.r) + std::abs(k.g - c.g) + std::abs(k.b - c.b);
        return d < 60;
    };
    int cap = -1, m_left = -1, cloud = -1, m_right = -1, sun = -1, sky = -1, bg = -1;
    for (const ShapeLayer& l : set.layers) {
        if (is(l, kOrange)) sun = l.id;
        else if (is(l, kYellow)) sky = l.id;
        else if (is(l, kGreen)) bg = l.id;
        else if (is(l, kBlack)) {
            if (m_left < 0) m_left = l.id;
            else if (set.layers[m_left].mask.x0 < l.mask.x0) m_right = l.id;
            else { m_right = m_left; m_left = l.id; }
        } else if (is(l, kWhite)) {
            // the cap is the smaller white region
            if (cap < 0) cap = l.id;
            else if (set.layers[cap].area > l.area) { cloud = cap; cap = l.id; }
            else cloud = l.id;
        }
    }
    return {cap, m_left, cloud, m_right, sun, sky, bg};
}

RasterImage three_disk_scene(int size) {
    Canvas cv(size, size, {245, 245, 245});
    double r = 0.24 * size;
    double cx = size / 2.0, cy = size / 2.0 + 0.05 * size;
    // red sits slightly farther from green (1.55r vs 1.45r): the red-green
    // lens is the smallest, so cutting red->green destroys the least
    Vec2 red{cx - 0.73 * r, cy};
    Vec2 green{cx + 0.73 * r, cy};
    Vec2 blue{cx, cy - 1.1237 * r};
    Rgb cr{200, 40, 40}, cg{40, 170, 60}, cb{50, 80, 200};

    cv.fill_disk(blue.x, blue.y, r, cb);
    cv.fill_disk(green.x, green.y, r, cg);  // green over blue
    cv.fill_disk(red.x, red.y, r, cr);      // red over green
    // blue over red: repaint the red-blue lens blue
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double drx = x - red.x, dry = y - red.y;
            double dbx = x - blue.x, dby = y - blue.y;
            if (drx * drx + dry * dry <= r * r && dbx * dbx + dby * dby <= r * r)
                cv.img.at(x, y) = cb;
        }
    return cv.img;
}

RasterImage kanizsa_scene(int size) {
    Canvas cv(size, size, {250, 250, 250});
    double m = size;
    cv.fill_poly({{0.50 * m, 0.08 * m}, {0.92 * m, 0.86 * m}, {0.08 * m, 0.86 * m}}, kOrange);
    // the occluding triangle pierces all three sides, leaving three corners
    cv.fill_poly({{0.50 * m, 0.94 * m}, {0.14 * m, 0.24 * m}, {0.86 * m, 0.24 * m}},
                 {60, 90, 200});
    return cv.img;
}

RasterImage rect_overlap_scene() {
    Canvas cv(96, 96, {245, 245, 245});
    cv.fill_rect(20, 10, 44, 86, {90, 90, 200});   // tall rect, bitten below
    cv.fill_rect(32, 40, 88, 64, {200, 120, 60});  // wide rect on top
    return cv.img;
}

RasterImage blob_scene(int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    Canvas cv(w, h, {230, 228, 220});
    const Rgb palette[7] = {{170, 60, 60},  {60, 130, 170}, {90, 170, 90}, {210, 180, 80},
                            {140, 90, 160}, {80, 80, 90},   {220, 140, 100}};
    for (int i = 0; i < 6; ++i) {
        Rgb c = palette[i % 7];
        double cx = (0.15 + 0.7 * rng.unit()) * w;
        double cy = (0.15 + 0.7 * rng.unit()) * h;
        double rx = (0.08 + 0.14 * rng.unit()) * w;
        double ry = (0.08 + 0.14 * rng.unit()) * h;
        cv.fill_ellipse(cx, cy, rx, ry, c);
    }
    return cv.img;
}

Mask random_mask(int w, int h, Rng& rng) {
    while (true) {
        Mask m(w, h, 0);
        int blobs = 1 + rng.below(3);
        for (int b = 0; b < blobs; ++b) {
            if (rng.below(2)) {
                int cx = rng.below(w), cy = rng.below(h), r = 2 + rng.below(std::max(2, w / 4));
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x)
                        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.at(x, y) = 1;
            } else {
                int x0 = rng.below(w), y0 = rng.below(h);
                int x1 = std::min(w, x0 + 1 + rng.below(w / 2 + 1));
                int y1 = std::min(h, y0 + 1 + rng.below(h / 2 + 1));
                for (int y = y0; y < y1; ++y)
                    for (int x = x0; x < x1; ++x) m.at(x, y) = 1;
            }
        }
        for (size_t i = 0; i < m.size(); ++i)
            if (m.data()[i]) return m;
    }
}

std::pair<Mask, Mask> random_disjoint_pair(int w, int h, Rng& rng) {
    while (true) {
        Mask a = random_mask(w, h, rng);
        Mask b = random_mask(w, h, rng);
        long nb = 0;
        for (size_t i = 0; i < b.size(); ++i) {
            if (a.data()[i]) b.data()[i] = 0;
            nb += b.data()[i];
        }
        if (nb > 0) return {std::move(a), std::move(b)};
    }
}

RingFixture ring_around_convex(int size, Rng& rng) {
    RingFixture f;
    f.inner = Mask(size, size, 0);
    f.ring = Mask(size, size, 0);
    double cx = size / 2.0 + rng.below(5) - 2, cy = size / 2.0 + rng.below(5) - 2;
    double rx = size * (0.10 + 0.08 * rng.unit());
    double ry = size * (0.10 + 0.08 * rng.unit());
    double gap = 2.0 + 2.0 * rng.unit();
    double band = 1.5 + 1.5 * rng.unit();
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double dx = x - cx, dy = y - cy;
            double e = (dx * dx) / (rx * rx) + (dy * dy) / (ry * ry);
            if (e <= 1.0) f.inner.at(x, y) = 1;
            double ox = rx + gap, oy = ry + gap;
            double e1 = (dx * dx) / (ox * ox) + (dy * dy) / (oy * oy);
            double e2 = (dx * dx) / ((ox + band) * (ox + band)) +
                        (dy * dy) / ((oy + band) * (oy + band));
            if (e2 <= 1.0 && e1 > 1.0) f.ring.at(x, y) = 1;
        }
    return f;
}

NotchFixture notched_disk(int size, double radius, double wedge_deg) {
    NotchFixture f;
    f.cx = size / 2.0;
    f.cy = size / 2.0;
    f.radius = radius;
    f.shape = Mask(size, size, 0);
    f.covered = Mask(size, size, 0);
    double half = wedge_deg * M_PI / 360.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double dx = x - f.cx, dy = y - f.cy;
            if (dx * dx + dy * dy > radius * radius) continue;
            f.covered.at(x, y) = 1;
            double ang = std::atan2(dy, dx);
            if (!(std::fabs(ang) <= half && dx > 0)) f.shape.at(x, y) = 1;
        }
    return f;
}

OneSidedFixture one_sided_gap(int size, double radius, double h_over_r) {
    OneSidedFixture f;
    f.cx = size / 2.0;
    f.cy = size / 2.0 + 0.1 * size;
    f.radius = radius;
    f.theta = std::acos(h_over_r);
    double hh = h_over_r * radius;
    f.chord_y = f.cy - hh;
    double cw = radius * std::sin(f.theta);
    f.x0 = f.cx - cw;
    f.xL = f.cx + cw;
    f.shape = Mask(size, size, 0);
    f.covered = Mask(size, size, 0);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double dx = x - f.cx, dy = y - f.cy;
            if (dx * dx + dy * dy > radius * radius) continue;
            f.covered.at(x, y) = 1;
            if (y >= f.chord_y) f.shape.at(x, y) = 1;
        }
    return f;
}

ShapeLayer layer_of(const Mask& m, int id, int color) {
    ShapeLayer l;
    l.id = id;
    l.color_index = color;
    l.mask = crop_to_box(m);
    l.area = l.mask.count();
    return l;
}

}  // namespace layervec::fixtures
