#pragma once

#include <vector>

#include "layervec/grid.hpp"

namespace layervec {

/// Periodic spectral solver on a w x h grid: solve() computes
/// invF( F(rhs) / symbol ) for a real, frequency-space symbol. Backed by
/// FFTW r2c/c2r plans owned by the instance; one instance per thread.
class Spectral2D {
public:
    Spectral2D(int w, int h);
    ~Spectral2D();
    Spectral2D(const Spectral2D&) = delete;
    Spectral2D& operator=(const Spectral2D&) = delete;

    int width() const { return w_; }
    int height() const { return h_; }
    size_t spectrum_size() const { return static_cast<size_t>(h_) * (w_ / 2 + 1); }

    /// rhs and out are w*h row-major; symbol has spectrum_size() entries in
    /// r2c layout (ky rows, kx in [0, w/2]). All symbol entries must be
    /// nonzero.
    void solve(const double* rhs, const double* symbol, double* out);

    /// invF( symbol * F(in) ): the frequency-space application of the
    /// operator the symbol represents.
    void apply(const double* in, const double* symbol, double* out);

    /// Symbol of the 5-point wrapped Laplacian:
    /// -2*(2 - cos(2*pi*kx/w) - cos(2*pi*ky/h)) in r2c layout.
    static std::vector<double> laplacian_symbol(int w, int h);

private:
    int w_, h_;
    double* real_;
    void* spec_;  // fftw_complex*
    void* fwd_;   // fftw_plan
    void* bwd_;   // fftw_plan
};

/// Spatial 5-point Laplacian with periodic wrap, for cross-checking the
/// spectral symbol.
Grid<double> laplacian_wrap(const Grid<double>& u);

}  // namespace layervec
