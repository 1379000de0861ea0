#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/core/errors.hpp"
#include "opevo/core/grid.hpp"

namespace opevo {

enum class KernelKind { Identity, LinearPhase, HarmonicClosed };

// Evolution of the unit wavefunction under a named Hamiltonian, in closed
// form. Identity: free space. LinearPhase: cubic_phase * e^{i linear_coeff q}.
// HarmonicClosed: prefactor * exp(-(1-alpha^2)/(1+alpha^2) * q^2/(2 q0^2)),
// i.e. a pure quadratic chirp with a branch-tracked focusing prefactor.
struct KernelForm {
    KernelKind kind = KernelKind::Identity;
    double hbar = 1.0;

    std::complex<double> cubic_phase{1.0, 0.0}; // LinearPhase scalar factor
    double linear_coeff = 0.0;                  // LinearPhase q-frequency

    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> tau{0.0, 0.0};
    std::complex<double> prefactor{1.0, 0.0};
    double q0 = 1.0;

    std::complex<double> evaluate(double q) const {
        switch (kind) {
            case KernelKind::Identity:
                return {1.0, 0.0};
            case KernelKind::LinearPhase:
                return cubic_phase * std::exp(std::complex<double>(0.0, linear_coeff * q));
            case KernelKind::HarmonicClosed: {
                const std::complex<double> a2 = alpha * alpha;
                const std::complex<double> chirp = -(1.0 - a2) / (1.0 + a2) / (2.0 * q0 * q0);
                return prefactor * std::exp(chirp * q * q);
            }
        }
        return {1.0, 0.0};
    }

    std::vector<std::complex<double>> evaluate(const Grid1D& g) const {
        std::vector<std::complex<double>> out(g.n_points);
        for (std::size_t j = 0; j < g.n_points; ++j) out[j] = evaluate(g.q_at(j));
        return out;
    }
};

struct HOParameters {
    std::complex<double> alpha; // e^{-i w t}
    std::complex<double> tau;   // (1/w) e^{+i w t} sin(w t)
};

inline HOParameters ho_parameters(double omega, double t) {
    if (!(omega > 0.0)) throw std::invalid_argument("ho_parameters: omega must be positive");
    const double wt = omega * t;
    const std::complex<double> eiwt = std::exp(std::complex<double>(0.0, wt));
    return {std::conj(eiwt), eiwt * std::sin(wt) / omega};
}

inline KernelForm make_kernel(const HamiltonianSpec& h, double t) {
    KernelForm k;
    k.hbar = h.hbar;
    switch (h.kind) {
        case HamiltonianKind::Free:
            k.kind = KernelKind::Identity;
            return k;
        case HamiltonianKind::ConstantForce: {
            const double F = static_cast<double>(h.force);
            const double m = static_cast<double>(h.mass);
            k.kind = KernelKind::LinearPhase;
            k.cubic_phase =
                std::exp(std::complex<double>(0.0, -F * F * t * t * t / (6.0 * m * h.hbar)));
            k.linear_coeff = F * t / h.hbar;
            return k;
        }
        case HamiltonianKind::Harmonic: {
            const double w = static_cast<double>(h.omega);
            const double m = static_cast<double>(h.mass);
            const double wt = w * t;
            const double coswt = std::cos(wt);
            if (std::abs(coswt) < 1e-9)
                throw ValidationError(
                    "make_kernel: unit function focuses at cos(w t) = 0; kernel unbounded");
            // continuous branch of 1/sqrt(cos): each focusing crossed
            // contributes e^{-i pi/2}
            const double j = std::round(wt / std::numbers::pi);
            k.kind = KernelKind::HarmonicClosed;
            const auto [alpha, tau] = ho_parameters(w, t);
            k.alpha = alpha;
            k.tau = tau;
            k.q0 = std::sqrt(h.hbar / (m * w));
            k.prefactor = std::exp(std::complex<double>(0.0, -j * std::numbers::pi / 2.0)) /
                          std::sqrt(std::abs(coswt));
            return k;
        }
        case HamiltonianKind::InvertedHarmonic:
        case HamiltonianKind::Custom:
            throw std::invalid_argument(
                "make_kernel: no closed form for this kind; use the spectral oracle");
    }
    return k;
}

// Deliberately wrong variant: drops the time factor from the q-frequency and
// the cubic scalar phase. Exists so the equation-of-motion residual checker
// has a known-bad kernel to reject.
inline KernelForm constant_force_kernel_without_time_factor(const HamiltonianSpec& h) {
    if (h.kind != HamiltonianKind::ConstantForce)
        throw std::invalid_argument(
            "constant_force_kernel_without_time_factor: constant-force Hamiltonians only");
    KernelForm k;
    k.kind = KernelKind::LinearPhase;
    k.hbar = h.hbar;
    k.cubic_phase = {1.0, 0.0};
    k.linear_coeff = static_cast<double>(h.force) / h.hbar;
    return k;
}

// Numerical witness that the free kernel is independent of which momentum
// eigenstate generates it: the product of (evolution phase of e^{ikq}) x
// (the eigenstate) x (conjugate eigenstate at the transported argument) x
// (compensating evolution phase) is identically one. The factors are
// evaluated separately so cancellation is checked, not assumed.
inline std::vector<std::complex<double>> kernel_equivalence_free(double k, double t, double m,
                                                                const Grid1D& g,
                                                                double hbar = 1.0) {
    const double phase_e = -hbar * k * k * t / (2.0 * m);
    std::vector<std::complex<double>> out(g.n_points);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        const double q = g.q_at(j);
        const auto f1 = std::exp(std::complex<double>(0.0, phase_e));
        const auto f2 = std::exp(std::complex<double>(0.0, k * q));
        const auto f3 = std::exp(std::complex<double>(0.0, -k * (q - hbar * k * t / m)));
        const auto f4 = std::exp(std::complex<double>(0.0, phase_e));
        out[j] = f1 * f2 * f3 * f4;
    }
    return out;
}

} // namespace opevo
