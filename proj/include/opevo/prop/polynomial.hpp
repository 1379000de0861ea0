#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/algebra/rational_complex.hpp"
#include "opevo/core/wavefunction.hpp"
#include "opevo/prop/kernels.hpp"

namespace opevo {

// Polynomial in q with complex coefficients, index n = coefficient of q^n.
struct PolynomialState {
    std::vector<std::complex<double>> coefficients;
    double hbar = 1.0;
    double mass = 1.0;

    void trim() {
        while (!coefficients.empty() && coefficients.back() == std::complex<double>{})
            coefficients.pop_back();
    }
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    std::complex<double> evaluate(double q) const {
        std::complex<double> acc{0.0, 0.0};
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
            acc = acc * q + *it;
        return acc;
    }
};

// Image of q^n under free evolution: the coefficients of (q + c d/dq)^n
// applied to 1, with c = i hbar t / m. Closed form: the q^l coefficient is
// binom(n,l) (n-l-1)!! c^((n-l)/2) when n-l is even, zero otherwise.
inline PolynomialState free_polynomial(int n, double t, double m, double hbar) {
    if (n < 0) throw std::invalid_argument("free_polynomial: degree must be nonnegative");
    const std::complex<double> c(0.0, hbar * t / m);
    PolynomialState out;
    out.hbar = hbar;
    out.mass = m;
    out.coefficients.assign(static_cast<std::size_t>(n) + 1, {0.0, 0.0});
    std::complex<double> cpow{1.0, 0.0};
    for (int l = n; l >= 0; l -= 2) {
        // binom(n,l) and (n-l-1)!! built up incrementally
        double binom = 1.0;
        for (int j = 0; j < n - l; ++j) binom = binom * (n - j) / (j + 1);
        double dfac = 1.0;
        for (int j = n - l - 1; j > 1; j -= 2) dfac *= j;
        out.coefficients[static_cast<std::size_t>(l)] = binom * dfac * cpow;
        cpow *= c;
    }
    out.trim();
    return out;
}

// Same coefficients in exact arithmetic: entry l is the rational multiplying
// q^l c^((n-l)/2) (zero when n-l is odd).
inline std::vector<Rational> free_polynomial_exact(int n) {
    if (n < 0) throw std::invalid_argument("free_polynomial_exact: degree must be nonnegative");
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int l = n; l >= 0; l -= 2) {
        Rational binom = 1;
        for (int j = 0; j < n - l; ++j) binom = binom * (n - j) / (j + 1);
        Rational dfac = 1;
        for (int j = n - l - 1; j > 1; j -= 2) dfac *= j;
        out[static_cast<std::size_t>(l)] = binom * dfac;
    }
    return out;
}

namespace detail {

inline std::vector<std::complex<double>> poly_product(
    const std::vector<std::complex<double>>& x, const std::vector<std::complex<double>>& y) {
    std::vector<std::complex<double>> out(x.size() + y.size() - 1, {0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return out;
}

// In-place Taylor shift: coefficients of P(q + a).
inline void poly_shift(std::vector<std::complex<double>>& c, double a) {
    if (c.size() < 2) return;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        for (std::size_t j = c.size() - 2; j + 1 > i; --j) c[j] += a * c[j + 1];
}

} // namespace detail

// Options for the harmonic route: the inverse-Gaussian dressing factor is a
// truncated exponential series, accurate for |q| <= window_half_width; the
// certified dressing error on that window must stay below tolerance.
struct HarmonicTruncation {
    int k_max = 40;
    double window_half_width = 3.0;
    double tolerance = 1e-8;
};

// Closed-form evolution result: polynomial part, kernel factor, an optional
// Gaussian envelope e^{gauss_coefficient q^2}, and a scalar phase. The grid
// value is the product of the four.
struct EvolvedPolynomial {
    PolynomialState state;
    KernelForm kernel;
    std::complex<double> gauss_coefficient{0.0, 0.0};
    std::complex<double> scalar_phase{1.0, 0.0};
    double truncation_bound = 0.0;

    WaveFunction evaluate(const Grid1D& g) const {
        WaveFunction psi;
        psi.grid = g;
        psi.representation = Representation::Position;
        psi.hbar = state.hbar;
        psi.amplitudes.resize(g.n_points);
        for (std::size_t j = 0; j < g.n_points; ++j) {
            const double q = g.q_at(j);
            psi.amplitudes[j] = scalar_phase * kernel.evaluate(q) *
                                std::exp(gauss_coefficient * q * q) * state.evaluate(q);
        }
        return psi;
    }
};

namespace detail {

// Apply the free-evolution map termwise with a given (complex) spreading
// parameter c and per-degree weights w_n: sum_n a_n w_n F_n(q; c).
inline std::vector<std::complex<double>> evolve_coefficients(
    const std::vector<std::complex<double>>& a, std::complex<double> c,
    const std::vector<std::complex<double>>& weight) {
    std::vector<std::complex<double>> out(a.size(), {0.0, 0.0});
    for (int n = 0; n < static_cast<int>(a.size()); ++n) {
        if (a[n] == std::complex<double>{}) continue;
        const std::complex<double> an = a[n] * weight[n];
        std::complex<double> cpow{1.0, 0.0};
        for (int l = n; l >= 0; l -= 2) {
            double binom = 1.0;
            for (int j = 0; j < n - l; ++j) binom = binom * (n - j) / (j + 1);
            double dfac = 1.0;
            for (int j = n - l - 1; j > 1; j -= 2) dfac *= j;
            out[l] += an * binom * dfac * cpow;
            cpow *= c;
        }
    }
    return out;
}

} // namespace detail

inline EvolvedPolynomial evolve_polynomial_state(const PolynomialState& p,
                                                 const HamiltonianSpec& h, double t,
                                                 const HarmonicTruncation& trunc = {}) {
    const double m = static_cast<double>(h.mass);
    const double hbar = h.hbar;
    EvolvedPolynomial out;
    out.state.hbar = hbar;
    out.state.mass = m;
    out.kernel.hbar = hbar;

    const std::vector<std::complex<double>> unit_weights(p.coefficients.size() + 1, {1.0, 0.0});

    switch (h.kind) {
        case HamiltonianKind::Free: {
            out.state.coefficients = detail::evolve_coefficients(
                p.coefficients, std::complex<double>(0.0, hbar * t / m), unit_weights);
            out.state.trim();
            return out;
        }
        case HamiltonianKind::ConstantForce: {
            const double F = static_cast<double>(h.force);
            out.state.coefficients = detail::evolve_coefficients(
                p.coefficients, std::complex<double>(0.0, hbar * t / m), unit_weights);
            detail::poly_shift(out.state.coefficients, -F * t * t / (2.0 * m));
            out.state.trim();
            out.kernel = make_kernel(h, t);
            return out;
        }
        case HamiltonianKind::Harmonic: {
            const double w = static_cast<double>(h.omega);
            const double q02 = hbar / (m * w);
            const auto [alpha, tau] = ho_parameters(w, t);

            // dress: multiply by the truncated series of e^{q^2/(2 q0^2)}
            std::vector<std::complex<double>> dress(2 * trunc.k_max + 1, {0.0, 0.0});
            double dk = 1.0;
            for (int k = 0; k <= trunc.k_max; ++k) {
                if (k > 0) dk *= 1.0 / (2.0 * q02 * k);
                dress[2 * k] = dk;
            }
            auto phi = detail::poly_product(p.coefficients, dress);

            // certified dressing error on the window
            const double x = trunc.window_half_width * trunc.window_half_width / (2.0 * q02);
            double tail = 0.0;
            if (x > 700.0) {
                tail = 1.0;
            } else {
                double term = std::exp(-x);
                for (int k = 1; k <= trunc.k_max; ++k) term *= x / k;
                for (int k = trunc.k_max + 1; k <= trunc.k_max + 400; ++k) {
                    term *= x / k;
                    tail += term;
                    if (term < tail * 1e-18) break;
                }
            }
            double max_p = 0.0;
            PolynomialState base{p.coefficients, hbar, m};
            for (int s = 0; s <= 512; ++s) {
                const double q = -trunc.window_half_width +
                                 s * trunc.window_half_width / 256.0;
                max_p = std::max(max_p, std::abs(base.evaluate(q)));
            }
            out.truncation_bound = 1.05 * max_p * tail;
            if (out.truncation_bound > trunc.tolerance)
                throw ValidationError(
                    "evolve_polynomial_state: harmonic dressing truncation bound " +
                    std::to_string(out.truncation_bound) + " exceeds tolerance");

            // each dressed monomial q^j picks up alpha^j and spreads with
            // c = i hbar tau / m
            std::vector<std::complex<double>> weights(phi.size(), {1.0, 0.0});
            for (std::size_t j = 1; j < weights.size(); ++j) weights[j] = weights[j - 1] * alpha;
            const std::complex<double> c = std::complex<double>(0.0, hbar / m) * tau;
            out.state.coefficients = detail::evolve_coefficients(phi, c, weights);
            out.state.trim();
            out.gauss_coefficient = {-1.0 / (2.0 * q02), 0.0};
            out.scalar_phase = std::exp(std::complex<double>(0.0, -w * t / 2.0));
            out.kernel.alpha = alpha;
            out.kernel.tau = tau;
            out.kernel.q0 = std::sqrt(q02);
            return out;
        }
        case HamiltonianKind::InvertedHarmonic:
        case HamiltonianKind::Custom:
            throw std::invalid_argument(
                "evolve_polynomial_state: closed forms exist for free, constant-force and "
                "harmonic kinds only");
    }
    return out;
}

} // namespace opevo
