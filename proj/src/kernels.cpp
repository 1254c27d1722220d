#include "layervec/kernels.hpp"

#include <cmath>

namespace layervec::kernels {

namespace {

inline int nearest_of(Rgb p, const std::array<double, 3>* c, int k) {
    int best = 0;
    double best_d = 0;
    for (int j = 0; j < k; ++j) {
        double dr = p.r - c[j][0], dg = p.g - c[j][1], db = p.b - c[j][2];
        double d = dr * dr + dg * dg + db * db;
        if (j == 0 || d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

}  // namespace

long assign_nearest_serial(const Rgb* px, size_t n, const std::array<double, 3>* centroids,
                           int k, std::uint16_t* labels) {
    long changed = 0;
    for (size_t i = 0; i < n; ++i) {
        auto l = static_cast<std::uint16_t>(nearest_of(px[i], centroids, k));
        changed += l != labels[i];
        labels[i] = l;
    }
    return changed;
}

long assign_nearest_omp(const Rgb* px, size_t n, const std::array<double, 3>* centroids,
                        int k, std::uint16_t* labels) {
    long changed = 0;
#pragma omp parallel for schedule(static) reduction(+ : changed)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        auto l = static_cast<std::uint16_t>(nearest_of(px[i], centroids, k));
        changed += l != labels[i];
        labels[i] = l;
    }
    return changed;
}

namespace {

// Lattice point (x,y) against a convex CCW polygon; boundary inclusive.
// Exact in 64-bit integers for image-scale coordinates.
inline bool inside_convex(const std::vector<PixelCoord>& poly, long x, long y) {
    size_t m = poly.size();
    if (m == 1) return x == poly[0].x && y == poly[0].y;
    if (m == 2) {
        long ax = poly[0].x, ay = poly[0].y, bx = poly[1].x, by = poly[1].y;
        long cr = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
        if (cr != 0) return false;
        long d = (bx - ax) * (x - ax) + (by - ay) * (y - ay);
        long len2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
        return d >= 0 && d <= len2;
    }
    for (size_t i = 0; i < m; ++i) {
        const PixelCoord& a = poly[i];
        const PixelCoord& b = poly[(i + 1) % m];
        long cr = static_cast<long>(b.x - a.x) * (y - a.y) -
                  static_cast<long>(b.y - a.y) * (x - a.x);
        if (cr < 0) return false;
    }
    return true;
}

}  // namespace

void fill_convex_serial(const std::vector<PixelCoord>& poly, BoxMask& out) {
    for (int yy = 0; yy < out.height(); ++yy)
        for (int xx = 0; xx < out.width(); ++xx)
            out.bits.at(xx, yy) = inside_convex(poly, out.x0 + xx, out.y0 + yy) ? 1 : 0;
}

void fill_convex_omp(const std::vector<PixelCoord>& poly, BoxMask& out) {
#pragma omp parallel for schedule(static)
    for (int yy = 0; yy < out.height(); ++yy)
        for (int xx = 0; xx < out.width(); ++xx)
            out.bits.at(xx, yy) = inside_convex(poly, out.x0 + xx, out.y0 + yy) ? 1 : 0;
}

namespace {

struct Overlap {
    int xa, xb, ya, yb;  // half-open intersection window
    bool empty() const { return xa >= xb || ya >= yb; }
};

inline Overlap intersect(const BoxMask& a, const BoxMask& b) {
    return {std::max(a.x0, b.x0), std::min(a.x1(), b.x1()),
            std::max(a.y0, b.y0), std::min(a.y1(), b.y1())};
}

}  // namespace

long count_overlap_serial(const BoxMask& a, const BoxMask& b) {
    Overlap w = intersect(a, b);
    if (w.empty()) return 0;
    long n = 0;
    for (int y = w.ya; y < w.yb; ++y)
        for (int x = w.xa; x < w.xb; ++x)
            n += a.bits.at(x - a.x0, y - a.y0) && b.bits.at(x - b.x0, y - b.y0);
    return n;
}

long count_overlap_omp(const BoxMask& a, const BoxMask& b) {
    Overlap w = intersect(a, b);
    if (w.empty()) return 0;
    long n = 0;
#pragma omp parallel for schedule(static) reduction(+ : n)
    for (int y = w.ya; y < w.yb; ++y)
        for (int x = w.xa; x < w.xb; ++x)
            n += a.bits.at(x - a.x0, y - a.y0) && b.bits.at(x - b.x0, y - b.y0);
    return n;
}

void elastica_rhs_v_serial(const double* u, const double* v, const double* cw, const double* cb,
                           double b_over_eps2, double c, double* rhs, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        double wpp = 12.0 * u[i] * u[i] - 4.0;
        rhs[i] = cw[i] * u[i] - cb[i] - b_over_eps2 * wpp * v[i] + c * v[i];
    }
}

void elastica_rhs_v_omp(const double* u, const double* v, const double* cw, const double* cb,
                        double b_over_eps2, double c, double* rhs, size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        double wpp = 12.0 * u[i] * u[i] - 4.0;
        rhs[i] = cw[i] * u[i] - cb[i] - b_over_eps2 * wpp * v[i] + c * v[i];
    }
}

void elastica_rhs_u_serial(const double* u, const double* v, double inv2eps, double c,
                           double* rhs, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        double wp = 4.0 * u[i] * u[i] * u[i] - 4.0 * u[i];
        rhs[i] = -v[i] - wp * inv2eps + c * u[i];
    }
}

void elastica_rhs_u_omp(const double* u, const double* v, double inv2eps, double c,
                        double* rhs, size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        double wp = 4.0 * u[i] * u[i] * u[i] - 4.0 * u[i];
        rhs[i] = -v[i] - wp * inv2eps + c * u[i];
    }
}

namespace {

inline double project_one(double x, std::uint8_t ps, std::uint8_t po) {
    if (ps) return 1.0;
    if (po) return -1.0;
    return std::clamp(x, -1.0, 1.0);
}

}  // namespace

double project_maxdiff_serial(double* u_new, const double* u_old, const std::uint8_t* pin_s,
                              const std::uint8_t* pin_o, size_t n) {
    double md = 0.0;
    for (size_t i = 0; i < n; ++i) {
        u_new[i] = project_one(u_new[i], pin_s[i], pin_o[i]);
        md = std::max(md, std::fabs(u_new[i] - u_old[i]));
    }
    return md;
}

double project_maxdiff_omp(double* u_new, const double* u_old, const std::uint8_t* pin_s,
                           const std::uint8_t* pin_o, size_t n) {
    double md = 0.0;
#pragma omp parallel for schedule(static) reduction(max : md)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        u_new[i] = project_one(u_new[i], pin_s[i], pin_o[i]);
        md = std::max(md, std::fabs(u_new[i] - u_old[i]));
    }
    return md;
}

}  // namespace layervec::kernels
