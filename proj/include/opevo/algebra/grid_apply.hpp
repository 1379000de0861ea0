#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "opevo/algebra/operator_polynomial.hpp"
#include "opevo/core/errors.hpp"
#include "opevo/core/fft.hpp"
#include "opevo/core/wavefunction.hpp"

namespace opevo {

// Apply a normal-ordered operator polynomial to a position-representation
// grid state: p^b acts spectrally (multiply by (hbar k)^b in momentum
// space), q^a acts pointwise, hbar^h scales numerically.
inline WaveFunction apply_operator_polynomial(const NumericPolynomial& poly,
                                              const WaveFunction& psi) {
    if (psi.representation != Representation::Position)
        throw std::invalid_argument(
            "apply_operator_polynomial: state must be in the position representation");

    const Grid1D& g = psi.grid;
    const double hbar = psi.hbar;
    const double hk_max = hbar * g.k_nyquist();

    // Group terms by spectral derivative order.
    std::map<int, std::vector<std::pair<Monomial, std::complex<double>>>> by_b;
    for (const auto& [m, c] : poly.terms()) {
        if (hk_max > 1.0 && static_cast<double>(m.b) * std::log(hk_max) > 700.0)
            throw OverflowGuardError(
                "apply_operator_polynomial: spectral amplification exceeds overflow guard");
        by_b[m.b].push_back({m, c});
    }

    std::vector<std::complex<double>> spectrum(psi.amplitudes);
    fft::forward(spectrum);

    WaveFunction out = psi;
    out.amplitudes.assign(g.n_points, {0.0, 0.0});

    std::vector<std::complex<double>> work(g.n_points);
    for (const auto& [b, terms] : by_b) {
        if (b == 0) {
            work = psi.amplitudes;
        } else {
            for (std::size_t j = 0; j < g.n_points; ++j)
                work[j] = spectrum[j] * std::pow(hbar * g.k_at(j), b);
            fft::inverse(work);
        }
        for (const auto& [m, c] : terms) {
            const double hscale = std::pow(hbar, m.h);
            for (std::size_t j = 0; j < g.n_points; ++j) {
                const double qa = m.a == 0 ? 1.0 : std::pow(g.q_at(j), m.a);
                out.amplitudes[j] += c * hscale * qa * work[j];
            }
        }
    }
    return out;
}

inline WaveFunction apply_operator_polynomial(const ExactPolynomial& poly,
                                              const WaveFunction& psi) {
    return apply_operator_polynomial(to_numeric(poly), psi);
}

} // namespace opevo
