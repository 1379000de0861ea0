#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "opevo/core/fft.hpp"
#include "opevo/core/window.hpp"
#include "opevo/oracle/split_step.hpp"

namespace opevo {

// Dense diagonalization is O(N^3); keep spectral-kernel grids modest.
inline constexpr std::size_t kSpectralPointsCap = 2048;

struct SpectralDecomposition {
    std::vector<double> energies; // ascending
    Eigen::MatrixXd states;       // column n = phi_n(q_j), sum phi^2 dq = 1
    std::size_t count = 0;
};

// Dense grid Hamiltonian: spectral kinetic block (FFT applied to identity
// columns, then symmetrized to scrub roundoff asymmetry) plus the diagonal
// potential.
inline Eigen::MatrixXd dense_hamiltonian(const PotentialGrid& v, double mass, double hbar) {
    const std::size_t n = v.grid.n_points;
    if (n > kSpectralPointsCap)
        throw std::invalid_argument("dense_hamiltonian: grid exceeds the dense-solver cap");
    Eigen::MatrixXd h(n, n);
    std::vector<std::complex<double>> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), std::complex<double>{});
        col[j] = {1.0, 0.0};
        fft::forward(col);
        for (std::size_t l = 0; l < n; ++l) {
            const double k = v.grid.k_at(l);
            col[l] *= hbar * hbar * k * k / (2.0 * mass);
        }
        fft::inverse(col);
        for (std::size_t i = 0; i < n; ++i) h(i, j) = col[i].real();
    }
    h = ((h + h.transpose()) / 2.0).eval();
    for (std::size_t j = 0; j < n; ++j) h(j, j) += v.values[j];
    return h;
}

// Full eigendecomposition, deterministic: energies ascending, each state's
// largest-magnitude sample made positive, grid-measure normalization.
inline SpectralDecomposition diagonalize_hamiltonian(const PotentialGrid& v, double mass,
                                                     double hbar) {
    const Eigen::MatrixXd h = dense_hamiltonian(v, mass, hbar);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_hamiltonian: eigensolver failed");

    SpectralDecomposition out;
    const std::size_t n = v.grid.n_points;
    out.count = n;
    out.energies.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.states = solver.eigenvectors() / std::sqrt(v.grid.dq);
    for (std::size_t c = 0; c < n; ++c) {
        Eigen::Index imax = 0;
        out.states.col(c).cwiseAbs().maxCoeff(&imax);
        if (out.states(imax, c) < 0.0) out.states.col(c) *= -1.0;
    }
    return out;
}

struct SpectralKernelOptions {
    double window_half_width = 0.0; // 0: three quarters of the box half-width
    double window_edge_width = 0.7;
    double projection_tolerance = 1e-3;
};

struct SpectralKernelResult {
    std::vector<std::complex<double>> values;
    std::vector<double> window;
    std::size_t retained = 0;
    double unit_projection_error = 0.0; // l2 gap of the windowed unit function
};

// Kernel as the spectral evolution of the (plateau-windowed) unit function:
// K(q,t) = sum_n e^{-i E_n t/hbar} phi_n(q) <phi_n, w>. The window stands in
// for the non-normalizable constant function; only its plateau is meaningful.
inline SpectralKernelResult kernel_from_spectrum(const PotentialGrid& v, double t,
                                                 std::size_t retained, double mass, double hbar,
                                                 const SpectralKernelOptions& opts = {}) {
    const std::size_t n = v.grid.n_points;
    const auto spec = diagonalize_hamiltonian(v, mass, hbar);
    if (retained == 0 || retained > spec.count)
        throw std::invalid_argument("kernel_from_spectrum: retained out of range");

    // asserted type invariants on the retained states
    const Eigen::MatrixXd sub = spec.states.leftCols(static_cast<Eigen::Index>(retained));
    const Eigen::MatrixXd gram = sub.transpose() * sub * v.grid.dq;
    const double ortho = (gram - Eigen::MatrixXd::Identity(retained, retained))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > 1e-8)
        throw std::runtime_error("kernel_from_spectrum: eigenbasis orthonormality violated");
    const Eigen::MatrixXd h = dense_hamiltonian(v, mass, hbar);
    for (std::size_t c = 0; c < retained; ++c) {
        const Eigen::VectorXd r =
            h * sub.col(c) - spec.energies[c] * sub.col(c);
        if (std::sqrt(r.squaredNorm() * v.grid.dq) > 1e-6)
            throw std::runtime_error("kernel_from_spectrum: eigenpair residual too large");
    }

    SpectralKernelResult out;
    out.retained = retained;
    const double half_width = opts.window_half_width > 0.0
                                  ? opts.window_half_width
                                  : 0.375 * (v.grid.q_max - v.grid.q_min);
    out.window = plateau_window(v.grid, half_width, opts.window_edge_width);

    Eigen::VectorXd w(n);
    for (std::size_t j = 0; j < n; ++j) w(j) = out.window[j];
    const Eigen::VectorXd overlaps = sub.transpose() * w * v.grid.dq;

    const Eigen::VectorXd projected = sub * overlaps;
    out.unit_projection_error = std::sqrt((projected - w).squaredNorm() * v.grid.dq);
    if (out.unit_projection_error > opts.projection_tolerance)
        throw ValidationError(
            "kernel_from_spectrum: retained states cannot represent the windowed unit "
            "function to the requested tolerance");

    out.values.assign(n, {0.0, 0.0});
    for (std::size_t c = 0; c < retained; ++c) {
        const std::complex<double> phase =
            std::exp(std::complex<double>(0.0, -spec.energies[c] * t / hbar)) * overlaps(c);
        for (std::size_t j = 0; j < n; ++j) out.values[j] += phase * sub(j, c);
    }
    return out;
}

} // namespace opevo
