// Times the serial reference kernels against their OpenMP versions.
#include <omp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <vector>

#include "layervec/geometry.hpp"
#include "layervec/kernels.hpp"

using namespace layervec;
using Clock = std::chrono::steady_clock;

namespace {

struct Timer {
    Clock::time_point t0 = Clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
};

std::uint64_t rng_state = 88172645463325252ULL;
std::uint64_t rng() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
}

void report(const char* name, double serial_ms, double omp_ms) {
    std::printf("%-22s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx\n", name, serial_ms,
                omp_ms, serial_ms / omp_ms);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    const int reps = 20;

    {
        size_t n = 1 << 20;
        std::vector<Rgb> px(n);
        for (auto& p : px)
            p = {(std::uint8_t)(rng() & 255), (std::uint8_t)(rng() & 255),
                 (std::uint8_t)(rng() & 255)};
        int k = 16;
        std::vector<std::array<double, 3>> cent(k);
        for (auto& c : cent) c = {double(rng() & 255), double(rng() & 255), double(rng() & 255)};
        std::vector<std::uint16_t> labels(n, 0);
        Timer ts;
        for (int r = 0; r < reps; ++r)
            kernels::assign_nearest_serial(px.data(), n, cent.data(), k, labels.data());
        double serial = ts.ms();
        Timer tp;
        for (int r = 0; r < reps; ++r)
            kernels::assign_nearest_omp(px.data(), n, cent.data(), k, labels.data());
        report("assign_nearest", serial, tp.ms());
    }

    {
        Mask m(700, 700, 0);
        for (int y = 0; y < 700; ++y)
            for (int x = 0; x < 700; ++x) {
                double dx = x - 350.0, dy = y - 350.0;
                if (dx * dx + 0.5 * dy * dy <= 300.0 * 300.0) m.at(x, y) = 1;
            }
        HullPolygon h = convex_hull(crop_to_box(m));
        BoxMask a = h.raster, b = h.raster;
        Timer ts;
        for (int r = 0; r < reps; ++r) kernels::fill_convex_serial(h.vertices, a);
        double serial = ts.ms();
        Timer tp;
        for (int r = 0; r < reps; ++r) kernels::fill_convex_omp(h.vertices, b);
        report("fill_convex", serial, tp.ms());

        Timer ts2;
        long x1 = 0, x2 = 0;
        for (int r = 0; r < reps; ++r) x1 += kernels::count_overlap_serial(a, b);
        double serial2 = ts2.ms();
        Timer tp2;
        for (int r = 0; r < reps; ++r) x2 += kernels::count_overlap_omp(a, b);
        report("count_overlap", serial2, tp2.ms());
        if (x1 != x2) std::printf("MISMATCH in count_overlap\n");
    }

    {
        size_t n = 512 * 512;
        std::vector<double> u(n), v(n), cw(n, 0.0), cb(n, 0.0), out(n);
        std::vector<std::uint8_t> ps(n, 0), po(n, 0);
        for (size_t i = 0; i < n; ++i) {
            u[i] = (double)(rng() & 0xFFFF) / 0x8000 - 1.0;
            v[i] = (double)(rng() & 0xFFFF) / 0x8000 - 1.0;
        }
        Timer ts;
        for (int r = 0; r < reps; ++r)
            kernels::elastica_rhs_v_serial(u.data(), v.data(), cw.data(), cb.data(), 0.04, 3.0,
                                           out.data(), n);
        double serial = ts.ms();
        Timer tp;
        for (int r = 0; r < reps; ++r)
            kernels::elastica_rhs_v_omp(u.data(), v.data(), cw.data(), cb.data(), 0.04, 3.0,
                                        out.data(), n);
        report("elastica_rhs_v", serial, tp.ms());

        Timer ts3;
        for (int r = 0; r < reps; ++r)
            kernels::project_maxdiff_serial(out.data(), u.data(), ps.data(), po.data(), n);
        double serial3 = ts3.ms();
        Timer tp3;
        for (int r = 0; r < reps; ++r)
            kernels::project_maxdiff_omp(out.data(), u.data(), ps.data(), po.data(), n);
        report("project_maxdiff", serial3, tp3.ms());
    }

    return 0;
}
