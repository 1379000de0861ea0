#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "opevo/algebra/grid_apply.hpp"
#include "opevo/algebra/hamiltonian.hpp"

namespace opevo {

inline constexpr double kDefaultResidualDt = 1e-4;

// A candidate kernel sampled on a grid at uniformly spaced times.
struct TimeSampledKernel {
    Grid1D grid;
    double hbar = 1.0;
    std::vector<double> times;
    std::vector<std::vector<std::complex<double>>> values;
};

template <class F>
TimeSampledKernel sample_kernel(const Grid1D& g, double t_center, double dt, int n_samples,
                                F&& kernel_at_time, double hbar = 1.0) {
    if (n_samples < 3 || n_samples % 2 == 0)
        throw std::invalid_argument("sample_kernel: need an odd sample count of at least 3");
    TimeSampledKernel out;
    out.grid = g;
    out.hbar = hbar;
    const int half = n_samples / 2;
    for (int s = -half; s <= half; ++s) {
        const double t = t_center + s * dt;
        out.times.push_back(t);
        std::vector<std::complex<double>> row(g.n_points);
        for (std::size_t j = 0; j < g.n_points; ++j) row[j] = kernel_at_time(g.q_at(j), t);
        out.values.push_back(std::move(row));
    }
    return out;
}

// || i hbar dK/dt - H K ||_2 / ||K||_2 at the central sample, restricted to
// |q| <= interior_half_width. The time derivative is a central difference
// (3 samples) or its Richardson refinement (5 or more); the spatial operator
// acts spectrally, so only the central sample touches an FFT.
inline double schrodinger_residual(
    const TimeSampledKernel& k, const HamiltonianSpec& h,
    double interior_half_width = std::numeric_limits<double>::infinity()) {
    const std::size_t s = k.times.size();
    if (s < 3 || s % 2 == 0 || k.values.size() != s)
        throw std::invalid_argument("schrodinger_residual: need an odd number (>=3) of samples");
    const std::size_t c = s / 2;
    const double dt = k.times[1] - k.times[0];
    for (std::size_t j = 1; j < s; ++j)
        if (std::abs(k.times[j] - k.times[j - 1] - dt) > 1e-12 * std::abs(dt))
            throw std::invalid_argument("schrodinger_residual: samples must be uniform in time");
    if (std::abs(k.hbar - h.hbar) > 1e-12 * h.hbar)
        throw std::invalid_argument("schrodinger_residual: kernel and Hamiltonian disagree on hbar");

    const std::size_t n = k.grid.n_points;
    std::vector<std::complex<double>> dkdt(n);
    if (s >= 5) {
        for (std::size_t j = 0; j < n; ++j)
            dkdt[j] = (-k.values[c + 2][j] + 8.0 * k.values[c + 1][j] - 8.0 * k.values[c - 1][j] +
                       k.values[c - 2][j]) /
                      (12.0 * dt);
    } else {
        for (std::size_t j = 0; j < n; ++j)
            dkdt[j] = (k.values[c + 1][j] - k.values[c - 1][j]) / (2.0 * dt);
    }

    WaveFunction center;
    center.grid = k.grid;
    center.hbar = k.hbar;
    center.representation = Representation::Position;
    center.amplitudes = k.values[c];
    const WaveFunction hk = apply_operator_polynomial(h.operator_polynomial(), center);

    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(k.grid.q_at(j)) > interior_half_width) continue;
        const std::complex<double> r =
            std::complex<double>(0.0, k.hbar) * dkdt[j] - hk.amplitudes[j];
        num += std::norm(r);
        den += std::norm(k.values[c][j]);
    }
    if (den == 0.0) throw std::invalid_argument("schrodinger_residual: kernel vanishes on interior");
    return std::sqrt(num / den);
}

} // namespace opevo
