#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "opevo/core/fft.hpp"
#include "opevo/core/grid.hpp"

namespace opevo {

enum class Representation { Position, Momentum };

// Complex amplitudes sampled on a uniform grid. Momentum-representation
// amplitudes are stored in FFT bin order (grid.k_at gives the wavenumber of
// each bin). The symmetric 1/sqrt(2*pi) Fourier convention is used
// throughout, so the norm is representation-independent.
struct WaveFunction {
    Grid1D grid;
    std::vector<std::complex<double>> amplitudes;
    Representation representation = Representation::Position;
    double hbar = 1.0;
    std::vector<std::string> warnings; // non-fatal flags accumulated by evolutions

    double measure() const {
        return representation == Representation::Position ? grid.dq : grid.dk;
    }
};

struct ObservableReport {
    double norm = 0.0;
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.0;
    double var_p = 0.0;
};

struct ComparisonReport {
    double l2_distance = 0.0;
    double fidelity = 0.0; // phase-insensitive: |<psi1|psi2>| / (|psi1| |psi2|)
    double max_pointwise = 0.0;
};

inline double norm(const WaveFunction& psi) {
    double s = 0.0;
    for (const auto& z : psi.amplitudes) s += std::norm(z);
    return std::sqrt(s * psi.measure());
}

inline WaveFunction make_gaussian(const Grid1D& grid, double center, double width,
                                  double k0, double hbar = 1.0) {
    if (!(width > 0.0)) throw std::invalid_argument("make_gaussian: width must be positive");
    if (!(hbar > 0.0)) throw std::invalid_argument("make_gaussian: hbar must be positive");
    if (center - 5.0 * width < grid.q_min || center + 5.0 * width > grid.q_max)
        throw std::invalid_argument("make_gaussian: packet not supported well inside the grid");

    WaveFunction psi;
    psi.grid = grid;
    psi.hbar = hbar;
    psi.amplitudes.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double q = grid.q_at(j);
        const double u = (q - center) / width;
        psi.amplitudes[j] = std::polar(std::exp(-0.5 * u * u), k0 * q);
    }
    const double n = norm(psi);
    for (auto& z : psi.amplitudes) z /= n;

    double edge_mass = 0.0;
    for (std::size_t j : {std::size_t{0}, std::size_t{1}, grid.n_points - 2, grid.n_points - 1})
        edge_mass += std::norm(psi.amplitudes[j]) * grid.dq;
    if (edge_mass > 1e-10)
        throw std::invalid_argument("make_gaussian: tail mass at the grid boundary exceeds 1e-10");
    return psi;
}

// Unitary transform with the symmetric 1/sqrt(2*pi) convention:
//   A(k) = 1/sqrt(2*pi) * integral dq psi(q) exp(-i k q)
//   psi(q) = 1/sqrt(2*pi) * integral dk A(k) exp(+i k q)
inline WaveFunction fourier_transform(const WaveFunction& psi, Representation direction) {
    if (psi.representation == direction)
        throw std::invalid_argument("fourier_transform: state already in the requested representation");

    const Grid1D& g = psi.grid;
    WaveFunction out = psi;
    out.representation = direction;
    const double inv_root = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    if (direction == Representation::Momentum) {
        fft::forward(out.amplitudes);
        for (std::size_t j = 0; j < g.n_points; ++j) {
            const double phase = -g.k_at(j) * g.q_min;
            out.amplitudes[j] *= g.dq * inv_root * std::polar(1.0, phase);
        }
    } else {
        for (std::size_t j = 0; j < g.n_points; ++j) {
            const double phase = g.k_at(j) * g.q_min;
            out.amplitudes[j] *= std::polar(1.0, phase);
        }
        fft::inverse(out.amplitudes);
        const double scale = g.dk * static_cast<double>(g.n_points) * inv_root;
        for (auto& z : out.amplitudes) z *= scale;
    }
    return out;
}

inline ObservableReport observables(const WaveFunction& psi) {
    WaveFunction other = fourier_transform(psi, psi.representation == Representation::Position
                                                    ? Representation::Momentum
                                                    : Representation::Position);
    const WaveFunction& pos = psi.representation == Representation::Position ? psi : other;
    const WaveFunction& mom = psi.representation == Representation::Momentum ? psi : other;

    ObservableReport r;
    double w_total = 0.0, q1 = 0.0, q2 = 0.0;
    for (std::size_t j = 0; j < pos.grid.n_points; ++j) {
        const double w = std::norm(pos.amplitudes[j]) * pos.grid.dq;
        const double q = pos.grid.q_at(j);
        w_total += w;
        q1 += w * q;
        q2 += w * q * q;
    }
    if (!(w_total > 0.0)) throw std::invalid_argument("observables: zero-norm state");

    double p1 = 0.0, p2 = 0.0;
    for (std::size_t j = 0; j < mom.grid.n_points; ++j) {
        const double w = std::norm(mom.amplitudes[j]) * mom.grid.dk;
        const double p = mom.hbar * mom.grid.k_at(j);
        p1 += w * p;
        p2 += w * p * p;
    }

    r.norm = std::sqrt(w_total);
    r.mean_q = q1 / w_total;
    r.mean_p = p1 / w_total;
    r.var_q = std::max(0.0, q2 / w_total - r.mean_q * r.mean_q);
    r.var_p = std::max(0.0, p2 / w_total - r.mean_p * r.mean_p);
    return r;
}

inline ComparisonReport compare(const WaveFunction& a, const WaveFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("compare: grid mismatch");
    if (a.representation != b.representation)
        throw std::invalid_argument("compare: representation mismatch");

    ComparisonReport r;
    double d2 = 0.0, na2 = 0.0, nb2 = 0.0;
    std::complex<double> overlap{0.0, 0.0};
    for (std::size_t j = 0; j < a.grid.n_points; ++j) {
        const auto diff = a.amplitudes[j] - b.amplitudes[j];
        d2 += std::norm(diff);
        na2 += std::norm(a.amplitudes[j]);
        nb2 += std::norm(b.amplitudes[j]);
        overlap += std::conj(a.amplitudes[j]) * b.amplitudes[j];
        r.max_pointwise = std::max(r.max_pointwise, std::abs(diff));
    }
    const double mu = a.measure();
    r.l2_distance = std::sqrt(d2 * mu);
    const double denom = std::sqrt(na2 * nb2);
    r.fidelity = denom > 0.0 ? std::abs(overlap) / denom : 0.0;
    return r;
}

} // namespace opevo
