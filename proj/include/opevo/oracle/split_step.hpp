#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/core/fft.hpp"
#include "opevo/core/wavefunction.hpp"

namespace opevo {

struct PotentialGrid {
    Grid1D grid;
    std::vector<double> values;
};

template <class F>
PotentialGrid make_potential(const Grid1D& g, F&& f) {
    PotentialGrid v;
    v.grid = g;
    v.values.resize(g.n_points);
    for (std::size_t j = 0; j < g.n_points; ++j) v.values[j] = f(g.q_at(j));
    return v;
}

inline PotentialGrid potential_grid(const HamiltonianSpec& h, const Grid1D& g) {
    const double m = static_cast<double>(h.mass);
    switch (h.kind) {
        case HamiltonianKind::Free:
            return make_potential(g, [](double) { return 0.0; });
        case HamiltonianKind::ConstantForce: {
            const double F = static_cast<double>(h.force);
            return make_potential(g, [F](double q) { return -F * q; });
        }
        case HamiltonianKind::Harmonic: {
            const double w = static_cast<double>(h.omega);
            return make_potential(g, [m, w](double q) { return 0.5 * m * w * w * q * q; });
        }
        case HamiltonianKind::InvertedHarmonic: {
            const double l = static_cast<double>(h.lambda);
            return make_potential(g, [m, l](double q) { return -0.5 * m * l * l * q * q; });
        }
        case HamiltonianKind::Custom:
            throw std::invalid_argument(
                "potential_grid: custom Hamiltonians carry no grid potential; build one with "
                "make_potential");
    }
    throw std::logic_error("potential_grid: unknown kind");
}

// Second-order symmetric splitting: half kinetic, full potential, half
// kinetic per step (interior half-kinetics merged). Exactly unitary up to
// roundoff; O(dt^2) accurate.
inline WaveFunction split_step_evolve(const WaveFunction& psi, const PotentialGrid& v, double t,
                                      std::size_t steps, double mass = 1.0) {
    if (psi.representation != Representation::Position)
        throw std::invalid_argument("split_step_evolve: position representation required");
    if (!(psi.grid == v.grid))
        throw std::invalid_argument("split_step_evolve: state and potential grids differ");
    if (steps < 1) throw std::invalid_argument("split_step_evolve: steps must be at least 1");
    if (!(mass > 0.0)) throw std::invalid_argument("split_step_evolve: mass must be positive");

    WaveFunction out = psi;
    if (t == 0.0) return out;

    const double dt = t / static_cast<double>(steps);
    const double hbar = psi.hbar;
    const std::size_t n = psi.grid.n_points;
    std::vector<std::complex<double>> kin_half(n), kin_full(n), pot(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = psi.grid.k_at(j);
        const double kin_phase = -hbar * k * k * dt / (4.0 * mass);
        kin_half[j] = std::exp(std::complex<double>(0.0, kin_phase));
        kin_full[j] = kin_half[j] * kin_half[j];
        pot[j] = std::exp(std::complex<double>(0.0, -v.values[j] * dt / hbar));
    }

    auto kinetic = [&](const std::vector<std::complex<double>>& phase) {
        fft::forward(out.amplitudes);
        for (std::size_t j = 0; j < n; ++j) out.amplitudes[j] *= phase[j];
        fft::inverse(out.amplitudes);
    };

    kinetic(kin_half);
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t j = 0; j < n; ++j) out.amplitudes[j] *= pot[j];
        kinetic(s + 1 < steps ? kin_full : kin_half);
    }
    return out;
}

} // namespace opevo
