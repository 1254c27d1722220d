#include "layervec/elastica.hpp"

#include <cmath>

#include "layervec/contour.hpp"
#include "layervec/fft.hpp"
#include "layervec/geometry.hpp"
#include "layervec/kernels.hpp"

namespace layervec {

Mask covered_region(int layer, const DepthOrdering& ordering, const LayerSet& set) {
    Mask o(set.width, set.height, 0);
    int r = ordering.rank[layer];
    for (const ShapeLayer& l : set.layers) {
        if (ordering.rank[l.id] > r) continue;
        for (int y = l.mask.y0; y < l.mask.y1(); ++y)
            for (int x = l.mask.x0; x < l.mask.x1(); ++x)
                if (l.mask.at(x, y)) o.at(x, y) = 1;
    }
    if (set.noise.mask.size() > 0)
        for (size_t i = 0; i < o.size(); ++i)
            if (set.noise.mask.data()[i]) o.data()[i] = 1;
    return o;
}

Mask fill_holes(const Mask& m) {
    int w = m.width(), h = m.height();
    Grid<std::uint8_t> outside(w, h, 0);
    std::vector<PixelCoord> stack;
    auto push = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= w || y >= h) return;
        if (outside.at(x, y) || m.at(x, y)) return;
        outside.at(x, y) = 1;
        stack.push_back({x, y});
    };
    for (int x = 0; x < w; ++x) { push(x, 0); push(x, h - 1); }
    for (int y = 0; y < h; ++y) { push(0, y); push(w - 1, y); }
    while (!stack.empty()) {
        PixelCoord p = stack.back();
        stack.pop_back();
        push(p.x + 1, p.y); push(p.x - 1, p.y);
        push(p.x, p.y + 1); push(p.x, p.y - 1);
    }
    Mask out(w, h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(x, y) = m.at(x, y) || !outside.at(x, y);
    return out;
}

namespace {

Vec2 normalized(Vec2 v) {
    double n = norm(v);
    if (n == 0) return {0, 0};
    return {v.x / n, v.y / n};
}

// Outward perpendicular of a boundary tangent at pixel p of mask S.
Vec2 outward_normal(Vec2 tangent, PixelCoord p, const Mask& s) {
    Vec2 out{0, 0};
    constexpr int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto& q : d) {
        int nx = p.x + q[0], ny = p.y + q[1];
        bool in_s = s.in_bounds(nx, ny) && s.at(nx, ny);
        if (!in_s) { out.x += q[0]; out.y += q[1]; }
    }
    Vec2 n1{-tangent.y, tangent.x};
    Vec2 n2{tangent.y, -tangent.x};
    return dot(n1, out) >= dot(n2, out) ? n1 : n2;
}

InpaintCorner make_corner(PixelCoord b, Vec2 t_pre, Vec2 t_post, const Mask& s, int r) {
    InpaintCorner c;
    c.point = b;
    c.pre_normal = outward_normal(t_pre, b, s);
    c.post_normal = outward_normal(t_post, b, s);
    c.radius = r;
    c.px0 = b.x - r;
    c.py0 = b.y - r;
    c.phase = Grid<std::int8_t>(2 * r + 1, 2 * r + 1, 127);

    // boundary U-turn: the two half-plane tests  cover everything, fall back
    // to "extend anywhere off the layer"
    bool degenerate = dot(t_pre, t_post) < -0.999;

    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            if (dx * dx + dy * dy > r * r) continue;
            int x = b.x + dx, y = b.y + dy;
            bool in_s = s.in_bounds(x, y) && s.at(x, y);
            std::int8_t v;
            if (degenerate) {
                v = in_s ? 0 : 1;
            } else {
                Vec2 rel{double(dx), double(dy)};
                if (dot(c.pre_normal, rel) >= 0 && dot(c.post_normal, rel) >= 0) v = -1;
                else if (in_s) v = 0;
                else v = 1;
            }
            c.phase.at(dx + r, dy + r) = v;
        }
    return c;
}

}  // namespace

std::vector<InpaintCorner> find_corners(const ShapeLayer& layer, const Mask& covered, int r,
                                        int window) {
    Mask s = Mask(covered.width(), covered.height(), 0);
    for (int y = layer.mask.y0; y < layer.mask.y1(); ++y)
        for (int x = layer.mask.x0; x < layer.mask.x1(); ++x)
            if (layer.mask.at(x, y)) s.at(x, y) = 1;

    std::vector<InpaintCorner> corners;
    for (const std::vector<PixelCoord>& walk : boundary_walks(s)) {
        int n = static_cast<int>(walk.size());
        if (n == 0) continue;
        // a boundary pixel is sealed when no outward 4-neighbor is free for
        // inpainting (in covered \ layer); maximal sealed runs are the arcs
        // shared with the covered region's boundary
        std::vector<bool> sealed(n);
        constexpr int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (int k = 0; k < n; ++k) {
            bool open = false;
            for (auto& q : d) {
                int nx = walk[k].x + q[0], ny = walk[k].y + q[1];
                if (!s.in_bounds(nx, ny)) continue;
                if (!s.at(nx, ny) && covered.at(nx, ny)) { open = true; break; }
            }
            sealed[k] = !open;
        }
        bool any_sealed = false, any_open = false;
        for (int k = 0; k < n; ++k) (sealed[k] ? any_sealed : any_open) = true;
        if (!any_sealed || !any_open) continue;  // nothing to inpaint toward

        auto tangent_pre = [&](int k) {
            Vec2 a{double(walk[((k - window) % n + n) % n].x),
                   double(walk[((k - window) % n + n) % n].y)};
            Vec2 b{double(walk[k].x), double(walk[k].y)};
            return normalized(b - a);
        };
        auto tangent_post = [&](int k) {
            Vec2 a{double(walk[k].x), double(walk[k].y)};
            Vec2 b{double(walk[(k + window) % n].x), double(walk[(k + window) % n].y)};
            return normalized(b - a);
        };

        for (int k = 0; k < n; ++k) {
            int prev = (k - 1 + n) % n;
            int next = (k + 1) % n;
            if (sealed[k] && !sealed[prev])  // arc start
                corners.push_back(make_corner(walk[k], tangent_pre(k), tangent_post(k), s, r));
            if (sealed[k] && !sealed[next])  // arc end
                corners.push_back(make_corner(walk[k], tangent_pre(k), tangent_post(k), s, r));
        }
    }
    return corners;
}

// Scheme notes. The damped splitting of the Euler-Lagrange system of the
// double-well energy uses the auxiliary field
//     v = eps*Lap(u) - W'(u)/(2*eps),  W(x) = (x^2-1)^2,
// with the stationarity condition
//     -a*v + 2b*Lap(v) - (b/eps^2)*W''(u)*v = -2*sum_j (u - psi_j)*chi_j.
// Both relations are solved spectrally per sweep with the nonlinear terms
// lagged and a damping term c*(.) added to both sides. The equations are
// negated first so the implicit symbols
//     sym_v = (a + c) + 4b*(2 - cos - cos) >= a + c
//     sym_u =      c  + 2eps*(2 - cos - cos) >= c
// stay positive for every frequency; the fixed points are unchanged.
PhaseField solve(const ShapeLayer& layer, const Mask& covered,
                 const std::vector<InpaintCorner>& corners, const ElasticaParams& params,
                 std::vector<double>* energy_trace) {
    int w = covered.width(), h = covered.height();
    if (w < 4 || h < 4) throw StageError("elastica", "grid too small to solve on");
    size_t n = static_cast<size_t>(w) * h;

    Mask s(w, h, 0);
    for (int y = layer.mask.y0; y < layer.mask.y1(); ++y)
        for (int x = layer.mask.x0; x < layer.mask.x1(); ++x)
            if (layer.mask.at(x, y)) s.at(x, y) = 1;

    std::vector<std::uint8_t> pin_s(n), pin_o(n);
    for (size_t i = 0; i < n; ++i) {
        pin_s[i] = s.data()[i];
        pin_o[i] = covered.data()[i] ? 0 : 1;
    }

    // corner fitting terms folded into per-pixel affine coefficients:
    // 2*sum_j (u - psi_j)*chi_j = cw*u - cb over B(b_j, r) n covered
    Grid<double> cw(w, h, 0.0), cb(w, h, 0.0);
    for (const InpaintCorner& c : corners) {
        for (int dy = 0; dy < c.phase.height(); ++dy)
            for (int dx = 0; dx < c.phase.width(); ++dx) {
                std::int8_t p = c.phase.at(dx, dy);
                if (p == 127) continue;
                int x = c.px0 + dx, y = c.py0 + dy;
                if (!covered.in_bounds(x, y) || !covered.at(x, y)) continue;
                cw.at(x, y) += 2.0;
                cb.at(x, y) += 2.0 * p;
            }
    }

    PhaseField pf;
    pf.u = Grid<double>(w, h, 0.0);
    pf.v = Grid<double>(w, h, 0.0);
    {
        Mask filled = fill_holes(s);
        for (size_t i = 0; i < n; ++i) pf.u.data()[i] = filled.data()[i] ? 1.0 : 0.0;
        kernels::project_maxdiff_omp(pf.u.data(), pf.u.data(), pin_s.data(), pin_o.data(), n);
    }

    std::vector<double> lap = Spectral2D::laplacian_symbol(w, h);
    std::vector<double> sym_v(lap.size()), sym_u(lap.size());
    for (size_t i = 0; i < lap.size(); ++i) {
        sym_v[i] = (params.a + params.c) - 2.0 * params.b * lap[i];
        sym_u[i] = params.c - params.eps * lap[i];
    }

    Spectral2D fft(w, h);
    Grid<double> rhs(w, h), u_old(w, h);
    double b_over_eps2 = params.b / (params.eps * params.eps);
    double inv2eps = 1.0 / (2.0 * params.eps);

    for (int iter = 0; iter < params.max_iters; ++iter) {
        kernels::elastica_rhs_v_omp(pf.u.data(), pf.v.data(), cw.data(), cb.data(), b_over_eps2,
                                    params.c, rhs.data(), n);
        fft.solve(rhs.data(), sym_v.data(), pf.v.data());

        u_old = pf.u;
        kernels::elastica_rhs_u_omp(pf.u.data(), pf.v.data(), inv2eps, params.c, rhs.data(), n);
        fft.solve(rhs.data(), sym_u.data(), pf.u.data());
        double diff = kernels::project_maxdiff_omp(pf.u.data(), u_old.data(), pin_s.data(),
                                                   pin_o.data(), n);
        pf.iterations = iter + 1;
        if (energy_trace)
            energy_trace->push_back(elastica_energy(pf.u, covered, corners, params));
        if (diff < params.tol) {
            pf.converged = true;
            break;
        }
    }
    return pf;
}

InpaintedShape small_shape_shortcut(const ShapeLayer& layer, const Mask& covered) {
    HullPolygon hull = convex_hull(layer.mask);
    InpaintedShape out;
    out.mask = Mask(covered.width(), covered.height(), 0);
    for (int y = hull.raster.y0; y < hull.raster.y1(); ++y)
        for (int x = hull.raster.x0; x < hull.raster.x1(); ++x)
            if (hull.raster.at(x, y) && covered.in_bounds(x, y) && covered.at(x, y))
                out.mask.at(x, y) = 1;
    out.contours = contours_of_mask(out.mask);
    return out;
}

InpaintedShape extract_contour(const PhaseField& pf, double level) {
    InpaintedShape out;
    out.mask = Mask(pf.u.width(), pf.u.height(), 0);
    long count = 0;
    for (size_t i = 0; i < pf.u.size(); ++i) {
        bool in = pf.u.data()[i] > level;
        out.mask.data()[i] = in;
        count += in;
    }
    if (count == 0) throw StageError("elastica", "empty superlevel set at the requested level");
    out.contours = marching_squares(pf.u, level);
    return out;
}

double elastica_energy(const Grid<double>& u, const Mask& covered,
                       const std::vector<InpaintCorner>& corners, const ElasticaParams& params) {
    int w = u.width(), h = u.height();
    double e = 0.0;
    for (int y = 0; y < h; ++y) {
        int yp = y + 1 == h ? 0 : y + 1;
        int ym = y == 0 ? h - 1 : y - 1;
        for (int x = 0; x < w; ++x) {
            if (!covered.at(x, y)) continue;
            int xp = x + 1 == w ? 0 : x + 1;
            int xm = x == 0 ? w - 1 : x - 1;
            double uc = u.at(x, y);
            double gx = u.at(xp, y) - uc;
            double gy = u.at(x, yp) - uc;
            double lapu = u.at(xp, y) + u.at(xm, y) + u.at(x, yp) + u.at(x, ym) - 4.0 * uc;
            double wval = (uc * uc - 1.0) * (uc * uc - 1.0);
            double wp = 4.0 * uc * uc * uc - 4.0 * uc;
            double inner = params.eps * lapu - wp / (2.0 * params.eps);
            e += params.a * (0.5 * params.eps * (gx * gx + gy * gy) +
                             wval / (2.0 * params.eps)) +
                 (params.b / params.eps) * inner * inner;
        }
    }
    for (const InpaintCorner& c : corners) {
        for (int dy = 0; dy < c.phase.height(); ++dy)
            for (int dx = 0; dx < c.phase.width(); ++dx) {
                std::int8_t p = c.phase.at(dx, dy);
                if (p == 127) continue;
                int x = c.px0 + dx, y = c.py0 + dy;
                if (!covered.in_bounds(x, y) || !covered.at(x, y)) continue;
                double d = u.at(x, y) - p;
                e += d * d;
            }
    }
    return e;
}

}  // namespace layervec
