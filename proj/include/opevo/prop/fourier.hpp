#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "opevo/core/fft.hpp"
#include "opevo/core/wavefunction.hpp"
#include "opevo/prop/dispersion.hpp"

namespace opevo {

namespace detail {

inline void require_position(const WaveFunction& psi, const char* who) {
    if (psi.representation != Representation::Position)
        throw std::invalid_argument(std::string(who) + ": position representation required");
}

// Relative probability mass sitting in the outermost two cells per side.
inline double edge_mass_fraction(const WaveFunction& psi) {
    const std::size_t n = psi.grid.n_points;
    double edge = 0.0, total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(psi.amplitudes[j]);
        total += w;
        if (j <= 1 || j >= n - 2) edge += w;
    }
    return total > 0.0 ? edge / total : 0.0;
}

inline void flag_leakage(WaveFunction& psi) {
    if (edge_mass_fraction(psi) > 1e-6)
        psi.warnings.push_back("boundary_leakage: evolved packet reaches the box edge");
}

} // namespace detail

// Momentum-space evolution A(k) -> e^{-i E(k) t / hbar} A(k). Exactly unitary.
// Relativistic dispersion keeps the rest-energy phase unless asked to drop it.
inline WaveFunction evolve_free_fourier(const WaveFunction& psi, double t,
                                        const DispersionRelation& d,
                                        bool drop_rest_energy = false) {
    detail::require_position(psi, "evolve_free_fourier");
    if (std::abs(psi.hbar - d.hbar) > 1e-12 * std::abs(d.hbar))
        throw std::invalid_argument("evolve_free_fourier: state and dispersion disagree on hbar");

    WaveFunction out = psi;
    const double e0 = drop_rest_energy ? d.energy(0.0) : 0.0;
    fft::forward(out.amplitudes);
    for (std::size_t j = 0; j < out.amplitudes.size(); ++j) {
        const double e = d.energy(out.grid.k_at(j)) - e0;
        out.amplitudes[j] *= std::exp(std::complex<double>(0.0, -e * t / d.hbar));
    }
    fft::inverse(out.amplitudes);
    detail::flag_leakage(out);
    return out;
}

// Constant force F: free evolution with the argument shifted by F t^2/(2m),
// then the boost phase e^{i F t q / hbar} and the scalar factor
// e^{-i F^2 t^3 / (6 m hbar)}. Equivalent to evolving under V = -F q.
inline WaveFunction evolve_constant_force_fourier(const WaveFunction& psi, double t, double F,
                                                  double m) {
    detail::require_position(psi, "evolve_constant_force_fourier");
    if (!(m > 0.0))
        throw std::invalid_argument("evolve_constant_force_fourier: mass must be positive");

    WaveFunction out = psi;
    const double hbar = psi.hbar;
    const double shift = F * t * t / (2.0 * m);
    fft::forward(out.amplitudes);
    for (std::size_t j = 0; j < out.amplitudes.size(); ++j) {
        const double k = out.grid.k_at(j);
        const double phase = -hbar * k * k * t / (2.0 * m) - k * shift;
        out.amplitudes[j] *= std::exp(std::complex<double>(0.0, phase));
    }
    fft::inverse(out.amplitudes);

    const std::complex<double> scalar =
        std::exp(std::complex<double>(0.0, -F * F * t * t * t / (6.0 * m * hbar)));
    for (std::size_t j = 0; j < out.amplitudes.size(); ++j) {
        const double q = out.grid.q_at(j);
        out.amplitudes[j] *= scalar * std::exp(std::complex<double>(0.0, F * t * q / hbar));
    }
    detail::flag_leakage(out);
    return out;
}

// Harmonic evolution by the exact quadratic-phase factorization
//   e^{-i H dt/hbar} = e^{-i g q^2/(2 hbar)} e^{-i b p^2/(2 hbar)} e^{-i g q^2/(2 hbar)}
// with g = m w tan(w dt/2), b = sin(w dt)/(m w). Exact per substep including
// the scalar phase; substeps only keep tan away from its poles, so focal
// times need no special casing.
inline WaveFunction evolve_harmonic_fourier(const WaveFunction& psi, double t, double omega,
                                            double m) {
    detail::require_position(psi, "evolve_harmonic_fourier");
    if (!(omega > 0.0))
        throw std::invalid_argument("evolve_harmonic_fourier: omega must be positive");
    if (!(m > 0.0))
        throw std::invalid_argument("evolve_harmonic_fourier: mass must be positive");

    WaveFunction out = psi;
    if (t == 0.0) return out;

    const int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(omega * t))));
    const double dt = t / nsub;
    const double g = m * omega * std::tan(omega * dt / 2.0);
    const double b = std::sin(omega * dt) / (m * omega);
    const double hbar = psi.hbar;
    const std::size_t n = out.grid.n_points;

    std::vector<std::complex<double>> kick(n), drift(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double q = out.grid.q_at(j);
        const double k = out.grid.k_at(j);
        kick[j] = std::exp(std::complex<double>(0.0, -g * q * q / (2.0 * hbar)));
        drift[j] = std::exp(std::complex<double>(0.0, -b * hbar * k * k / 2.0));
    }
    for (int s = 0; s < nsub; ++s) {
        for (std::size_t j = 0; j < n; ++j) out.amplitudes[j] *= kick[j];
        fft::forward(out.amplitudes);
        for (std::size_t j = 0; j < n; ++j) out.amplitudes[j] *= drift[j];
        fft::inverse(out.amplitudes);
        for (std::size_t j = 0; j < n; ++j) out.amplitudes[j] *= kick[j];
    }
    detail::flag_leakage(out);
    return out;
}

} // namespace opevo
