#include "layervec/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace layervec {

namespace {
std::mutex plan_mutex;  // FFTW plan creation is not thread safe
}

Spectral2D::Spectral2D(int w, int h) : w_(w), h_(h) {
    size_t ns = spectrum_size();
    real_ = fftw_alloc_real(static_cast<size_t>(w) * h);
    auto* spec = fftw_alloc_complex(ns);
    spec_ = spec;
    std::lock_guard<std::mutex> lock(plan_mutex);
    fwd_ = fftw_plan_dft_r2c_2d(h, w, real_, spec, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_2d(h, w, spec, real_, FFTW_ESTIMATE);
}

Spectral2D::~Spectral2D() {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(real_);
    fftw_free(spec_);
}

void Spectral2D::solve(const double* rhs, const double* symbol, double* out) {
    size_t n = static_cast<size_t>(w_) * h_;
    size_t ns = spectrum_size();
    std::memcpy(real_, rhs, n * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(fwd_));
    auto* spec = static_cast<fftw_complex*>(spec_);
    double scale = 1.0 / static_cast<double>(n);
    for (size_t i = 0; i < ns; ++i) {
        double s = scale / symbol[i];
        spec[i][0] *= s;
        spec[i][1] *= s;
    }
    fftw_execute(static_cast<fftw_plan>(bwd_));
    std::memcpy(out, real_, n * sizeof(double));
}

void Spectral2D::apply(const double* in, const double* symbol, double* out) {
    size_t n = static_cast<size_t>(w_) * h_;
    size_t ns = spectrum_size();
    std::memcpy(real_, in, n * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(fwd_));
    auto* spec = static_cast<fftw_complex*>(spec_);
    double scale = 1.0 / static_cast<double>(n);
    for (size_t i = 0; i < ns; ++i) {
        double s = scale * symbol[i];
        spec[i][0] *= s;
        spec[i][1] *= s;
    }
    fftw_execute(static_cast<fftw_plan>(bwd_));
    std::memcpy(out, real_, n * sizeof(double));
}

std::vector<double> Spectral2D::laplacian_symbol(int w, int h) {
    std::vector<double> sym(static_cast<size_t>(h) * (w / 2 + 1));
    const double two_pi = 2.0 * M_PI;
    for (int ky = 0; ky < h; ++ky)
        for (int kx = 0; kx <= w / 2; ++kx)
            sym[static_cast<size_t>(ky) * (w / 2 + 1) + kx] =
                -2.0 * (2.0 - std::cos(two_pi * kx / w) - std::cos(two_pi * ky / h));
    return sym;
}

Grid<double> laplacian_wrap(const Grid<double>& u) {
    int w = u.width(), h = u.height();
    Grid<double> out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        int yp = y + 1 == h ? 0 : y + 1;
        int ym = y == 0 ? h - 1 : y - 1;
        for (int x = 0; x < w; ++x) {
            int xp = x + 1 == w ? 0 : x + 1;
            int xm = x == 0 ? w - 1 : x - 1;
            out.at(x, y) = u.at(xp, y) + u.at(xm, y) + u.at(x, yp) + u.at(x, ym) -
                           4.0 * u.at(x, y);
        }
    }
    return out;
}

}  // namespace layervec
