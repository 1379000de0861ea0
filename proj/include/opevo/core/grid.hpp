#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace opevo {

// Uniform 1D position grid q_j = q_min + j*dq, j = 0..n-1, paired with the
// FFT wavenumber grid k_j (dk = 2*pi/(n*dq), negative frequencies in the
// upper half, standard FFT bin order).
struct Grid1D {
    std::size_t n_points = 0;
    double q_min = 0.0;
    double q_max = 0.0;
    double dq = 0.0;
    double dk = 0.0;

    double q_at(std::size_t j) const { return q_min + static_cast<double>(j) * dq; }

    // FFT bin order: k_j = j*dk for j < n/2, (j-n)*dk otherwise.
    double k_at(std::size_t j) const {
        const auto n = static_cast<std::ptrdiff_t>(n_points);
        auto i = static_cast<std::ptrdiff_t>(j);
        if (i >= n / 2) i -= n;
        return static_cast<double>(i) * dk;
    }

    double k_nyquist() const { return static_cast<double>(n_points / 2) * dk; }

    std::vector<double> q_values() const {
        std::vector<double> out(n_points);
        for (std::size_t j = 0; j < n_points; ++j) out[j] = q_at(j);
        return out;
    }

    std::vector<double> k_values() const {
        std::vector<double> out(n_points);
        for (std::size_t j = 0; j < n_points; ++j) out[j] = k_at(j);
        return out;
    }

    friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

inline Grid1D build_grid(std::size_t n_points, double q_min, double q_max) {
    if (n_points < 8 || (n_points & (n_points - 1)) != 0)
        throw std::invalid_argument("build_grid: n_points must be a power of two >= 8");
    if (!(q_max > q_min))
        throw std::invalid_argument("build_grid: q_max must exceed q_min");
    Grid1D g;
    g.n_points = n_points;
    g.q_min = q_min;
    g.q_max = q_max;
    g.dq = (q_max - q_min) / static_cast<double>(n_points);
    g.dk = 2.0 * std::numbers::pi / (static_cast<double>(n_points) * g.dq);
    return g;
}

} // namespace opevo
