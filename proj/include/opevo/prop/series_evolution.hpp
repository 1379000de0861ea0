#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "opevo/algebra/grid_apply.hpp"
#include "opevo/algebra/series.hpp"
#include "opevo/prop/polynomial.hpp"

namespace opevo {

struct SeriesEvolutionOptions {
    double window_half_width = 0.0;     // 0 = evaluate on the whole grid
    double divergence_threshold = 1e6;  // growth factor that trips the flag
};

// Taylor polynomial of the normalized Gaussian e^{-q^2/(2 width^2)} /
// (pi^(1/4) width^(1/2)), through the given even degree.
inline PolynomialState gaussian_taylor_coefficients(double width, int degree, double hbar = 1.0) {
    if (!(width > 0.0))
        throw std::invalid_argument("gaussian_taylor_coefficients: width must be positive");
    PolynomialState out;
    out.hbar = hbar;
    out.coefficients.assign(static_cast<std::size_t>(degree) + 1, {0.0, 0.0});
    double a = 1.0 / (std::pow(std::numbers::pi, 0.25) * std::sqrt(width));
    for (int k = 0; 2 * k <= degree; ++k) {
        if (k > 0) a *= -1.0 / (2.0 * width * width * k);
        out.coefficients[static_cast<std::size_t>(2 * k)] = a;
    }
    return out;
}

namespace detail {

// Act with a normal-ordered operator polynomial on a q-polynomial given by
// its coefficient vector, entirely symbolically: p -> -i hbar d/dq.
inline std::vector<std::complex<double>> act_on_coefficients(
    const NumericPolynomial& op, const std::vector<std::complex<double>>& u, double hbar) {
    int max_a = 0;
    for (const auto& [m, c] : op.terms()) max_a = std::max(max_a, m.a);
    std::vector<std::complex<double>> out(u.size() + static_cast<std::size_t>(max_a), {0.0, 0.0});
    for (const auto& [m, c] : op.terms()) {
        std::vector<std::complex<double>> v = u;
        for (int d = 0; d < m.b; ++d) {
            for (std::size_t l = 0; l + 1 < v.size(); ++l)
                v[l] = std::complex<double>(0.0, -hbar) * double(l + 1) * v[l + 1];
            if (!v.empty()) v.back() = {0.0, 0.0};
        }
        const std::complex<double> scale = c * std::pow(hbar, m.h);
        for (std::size_t l = 0; l < v.size(); ++l)
            if (v[l] != std::complex<double>{}) out[l + static_cast<std::size_t>(m.a)] += scale * v[l];
    }
    while (out.size() > 1 && out.back() == std::complex<double>{}) out.pop_back();
    return out;
}

// Coefficient vector of the truncated exponential series applied to the unit
// function: sum_j w_j [H^j]_{p->0} with w_j = (-i t / hbar)^j / j!.
inline std::vector<std::complex<double>> kernel_series_coefficients(const HamiltonianSpec& h,
                                                                    double t, std::size_t order) {
    const ExactPolynomial hp = h.operator_polynomial();
    std::vector<std::complex<double>> kvec{{1.0, 0.0}};
    ExactPolynomial hj = ExactPolynomial::one();
    std::complex<double> w{1.0, 0.0};
    const std::complex<double> step(0.0, -t / h.hbar);
    for (std::size_t j = 1; j <= order; ++j) {
        hj = hj * hp;
        w *= step / double(j);
        for (const auto& [m, c] : hj.terms()) {
            if (m.b != 0) continue;
            if (kvec.size() <= static_cast<std::size_t>(m.a)) kvec.resize(m.a + 1, {0.0, 0.0});
            kvec[m.a] += w * c.to_double() * std::pow(h.hbar, m.h);
        }
    }
    return kvec;
}

} // namespace detail

// Operator-method evolution of a polynomial state: compose the polynomial
// with the backward Heisenberg position series, multiply by the truncated
// kernel series applied to the unit function (all symbolic), then evaluate
// on the grid inside the window.
inline WaveFunction evolve_by_operator_series(const PolynomialState& p, const Grid1D& grid,
                                              const HamiltonianSpec& h, double t,
                                              std::size_t order,
                                              const SeriesEvolutionOptions& opts = {}) {
    if (order > kDefaultDegreeGuard)
        throw DegreeGuardError("evolve_by_operator_series: order exceeds the degree guard");

    const auto kvec = detail::kernel_series_coefficients(h, t, order);
    const auto series = heisenberg_series(ExactPolynomial::q(), h, order);
    const NumericPolynomial back = evaluate_series(series, -t, h.hbar);

    // Horner in the operator argument: r = a_d K; r <- X r + a_n K
    std::vector<std::complex<double>> r(kvec.size(), {0.0, 0.0});
    const auto& a = p.coefficients;
    if (!a.empty()) {
        for (std::size_t l = 0; l < kvec.size(); ++l) r[l] = a.back() * kvec[l];
        for (std::size_t n = a.size() - 1; n-- > 0;) {
            r = detail::act_on_coefficients(back, r, h.hbar);
            if (r.size() < kvec.size()) r.resize(kvec.size(), {0.0, 0.0});
            for (std::size_t l = 0; l < kvec.size(); ++l) r[l] += a[n] * kvec[l];
        }
    }

    WaveFunction out;
    out.grid = grid;
    out.representation = Representation::Position;
    out.hbar = h.hbar;
    out.amplitudes.assign(grid.n_points, {0.0, 0.0});
    const double w = opts.window_half_width;
    PolynomialState result{r, h.hbar, static_cast<double>(h.mass)};
    double peak = 0.0;
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double q = grid.q_at(j);
        if (w > 0.0 && std::abs(q) > w) continue;
        out.amplitudes[j] = result.evaluate(q);
        peak = std::max(peak, std::abs(out.amplitudes[j]));
    }
    if (peak > opts.divergence_threshold)
        out.warnings.push_back("series_divergence: truncated series grows beyond threshold");
    return out;
}

// Grid-state variant: apply the truncated exponential of the Hamiltonian
// directly, term by term, through the spectral operator applicator.
inline WaveFunction evolve_by_operator_series(const WaveFunction& psi, const HamiltonianSpec& h,
                                              double t, std::size_t order,
                                              const SeriesEvolutionOptions& opts = {}) {
    if (psi.representation != Representation::Position)
        throw std::invalid_argument("evolve_by_operator_series: position representation required");
    if (order > kDefaultDegreeGuard)
        throw DegreeGuardError("evolve_by_operator_series: order exceeds the degree guard");

    const NumericPolynomial hnum = to_numeric(h.operator_polynomial());
    const std::complex<double> step(0.0, -t / h.hbar);
    WaveFunction out = psi;
    WaveFunction term = psi;
    const double base = norm(psi);
    // For a convergent exponential series the term norms eventually decay
    // monotonically.  On a grid, though, every application of H multiplies
    // rounding noise near the Nyquist wavenumber by ~ (k_ny^2 t) / (2 m j),
    // so once the genuine terms have decayed the computed ones regrow from
    // that noise.  Renewed growth after the decay phase is therefore a
    // numerical artifact, not part of the answer: stop and flag it.
    double min_seen = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= order; ++j) {
        term = apply_operator_polynomial(hnum, term);
        const std::complex<double> scale = step / double(j);
        for (auto& z : term.amplitudes) z *= scale;
        const double tn = norm(term);
        if (tn > opts.divergence_threshold * base) {
            out.warnings.push_back("series_divergence: truncated series grows beyond threshold");
            break;
        }
        if (min_seen < base && tn > 100.0 * min_seen) {
            out.warnings.push_back(
                "series_roundoff: high-order terms regrew from grid rounding noise; "
                "series truncated early");
            break;
        }
        min_seen = std::min(min_seen, tn);
        for (std::size_t l = 0; l < out.amplitudes.size(); ++l)
            out.amplitudes[l] += term.amplitudes[l];
    }
    return out;
}

} // namespace opevo
