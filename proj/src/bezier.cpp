#include "layervec/bezier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace layervec {

std::vector<double> discrete_curvature(const std::vector<Vec2>& contour, int h) {
    int n = static_cast<int>(contour.size());
    if (h < 1 || 2 * h >= n) throw StageError("bezier", "curvature step too large for contour");
    std::vector<double> kappa(n, 0.0);
    for (int k = 0; k < n; ++k) {
        Vec2 pm = contour[((k - h) % n + n) % n];
        Vec2 pc = contour[k];
        Vec2 pp = contour[(k + h) % n];
        Vec2 u = pm - pc;  // p_k -> p_{k-h}
        Vec2 v = pp - pc;  // p_k -> p_{k+h}
        Vec2 w = pm - pp;  // p_{k+h} -> p_{k-h}
        double den = norm(u) * norm(v) * norm(w);
        if (den == 0.0) continue;
        kappa[k] = -2.0 * cross(u, v) / den;
    }
    return kappa;
}

std::vector<int> find_extrema(const std::vector<double>& curvature, double threshold) {
    int n = static_cast<int>(curvature.size());
    std::vector<bool> above(n);
    int n_above = 0;
    for (int k = 0; k < n; ++k) {
        above[k] = std::fabs(curvature[k]) > threshold;
        n_above += above[k];
    }
    if (n_above == 0) return {0};

    // maximal circular runs of above-threshold indices
    std::vector<std::pair<int, int>> runs;  // [start, len]
    if (n_above == n) {
        runs.push_back({0, n});
    } else {
        int k = 0;
        while (above[k]) k = (k + 1) % n;  // stand on a below-threshold index
        for (int step = 0; step < n; ++step) {
            int i = (k + step) % n;
            if (!above[i]) continue;
            int prev = (i - 1 + n) % n;
            if (!above[prev]) {
                int len = 0;
                while (above[(i + len) % n]) ++len;
                runs.push_back({i, len});
            }
        }
    }

    std::vector<int> out;
    for (auto [start, len] : runs) {
        for (int o = 0; o < len; ++o) {
            int i = (start + o) % n;
            double v = std::fabs(curvature[i]);
            bool rising = o == 0 || v > std::fabs(curvature[(start + o - 1) % n]);
            bool falling = o == len - 1 || v >= std::fabs(curvature[(start + o + 1) % n]);
            if (rising && falling) out.push_back(i);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CubicBezier fit_segment(const std::vector<Vec2>& points) {
    size_t m = points.size();
    if (m < 2) throw StageError("bezier", "need at least 2 points to fit");
    Vec2 p0 = points.front(), p3 = points.back();
    auto straight = [&] {
        Vec2 d = (p3 - p0) * (1.0 / 3.0);
        return CubicBezier{p0, p0 + d, p0 + d + d, p3};
    };
    if (m == 2) return straight();

    // chord-length parameters
    std::vector<double> t(m, 0.0);
    for (size_t q = 1; q < m; ++q) t[q] = t[q - 1] + norm(points[q] - points[q - 1]);
    double total = t.back();
    if (total == 0.0) return straight();
    for (double& x : t) x /= total;

    // normal equations for the two free control points
    double c11 = 0, c12 = 0, c22 = 0;
    Vec2 x1{0, 0}, x2{0, 0};
    for (size_t q = 0; q < m; ++q) {
        double s = 1.0 - t[q];
        double b0 = s * s * s, b1 = 3 * s * s * t[q], b2 = 3 * s * t[q] * t[q],
               b3 = t[q] * t[q] * t[q];
        Vec2 r = points[q] - (p0 * b0 + p3 * b3);
        c11 += b1 * b1;
        c12 += b1 * b2;
        c22 += b2 * b2;
        x1 = x1 + r * b1;
        x2 = x2 + r * b2;
    }
    double det = c11 * c22 - c12 * c12;
    if (std::fabs(det) < 1e-12) return straight();
    CubicBezier out;
    out.p0 = p0;
    out.p3 = p3;
    out.p1 = {(x1.x * c22 - x2.x * c12) / det, (x1.y * c22 - x2.y * c12) / det};
    out.p2 = {(x2.x * c11 - x1.x * c12) / det, (x2.y * c11 - x1.y * c12) / det};
    if (!std::isfinite(out.p1.x) || !std::isfinite(out.p1.y) || !std::isfinite(out.p2.x) ||
        !std::isfinite(out.p2.y))
        return straight();
    return out;
}

double hausdorff_points_to_curve(const std::vector<Vec2>& points, const CubicBezier& curve,
                                 int n_samples) {
    std::vector<Vec2> samples(n_samples);
    for (int i = 0; i < n_samples; ++i)
        samples[i] = curve.eval(static_cast<double>(i) / (n_samples - 1));
    double worst = 0.0;
    for (const Vec2& p : points) {
        double best = std::numeric_limits<double>::max();
        for (const Vec2& q : samples) {
            double dx = p.x - q.x, dy = p.y - q.y;
            best = std::min(best, dx * dx + dy * dy);
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

namespace {

// index of the interior point farthest from the curve
int worst_point(const std::vector<Vec2>& points, const CubicBezier& curve) {
    int n = static_cast<int>(points.size());
    std::vector<Vec2> samples(64);
    for (int i = 0; i < 64; ++i) samples[i] = curve.eval(i / 63.0);
    int arg = n / 2;
    double worst = -1.0;
    for (int k = 1; k + 1 < n; ++k) {
        double best = std::numeric_limits<double>::max();
        for (const Vec2& q : samples) {
            double dx = points[k].x - q.x, dy = points[k].y - q.y;
            best = std::min(best, dx * dx + dy * dy);
        }
        if (best > worst) {
            worst = best;
            arg = k;
        }
    }
    return arg;
}

}  // namespace

std::vector<CubicBezier> fit_contour(const std::vector<Vec2>& contour, double kappa_threshold,
                                     double fit_tol, int h) {
    int n = static_cast<int>(contour.size());
    if (n < 3) throw StageError("bezier", "contour too short to fit");
    int step = h;
    while (2 * step >= n && step > 1) --step;
    std::vector<int> splits = find_extrema(discrete_curvature(contour, step), kappa_threshold);

    auto arc_points = [&](int from, int to) {  // inclusive circular range
        std::vector<Vec2> pts;
        int len = ((to - from) % n + n) % n;
        if (len == 0) len = n;  // whole loop when a single split index
        pts.reserve(len + 1);
        for (int o = 0; o <= len; ++o) pts.push_back(contour[(from + o) % n]);
        return pts;
    };

    std::vector<CubicBezier> out;
    int n_splits = static_cast<int>(splits.size());
    for (int k = 0; k < n_splits; ++k) {
        int arc_start = splits[k];
        int arc_end = splits[(k + 1) % n_splits];
        std::vector<Vec2> pts = arc_points(arc_start, arc_end);
        // Alg. style do-while: fit [s1,s2]; on failure pull s2 in to the
        // worst point, on success emit and resume from s2
        int s1 = 0, s2 = static_cast<int>(pts.size()) - 1;
        while (true) {
            std::vector<Vec2> sub(pts.begin() + s1, pts.begin() + s2 + 1);
            CubicBezier c = fit_segment(sub);
            if (hausdorff_points_to_curve(sub, c) > fit_tol && sub.size() > 2) {
                s2 = s1 + worst_point(sub, c);
            } else {
                out.push_back(c);
                if (s2 == static_cast<int>(pts.size()) - 1) break;
                s1 = s2;
                s2 = static_cast<int>(pts.size()) - 1;
            }
        }
    }
    return out;
}

}  // namespace layervec
