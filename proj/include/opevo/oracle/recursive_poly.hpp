#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "opevo/algebra/rational_complex.hpp"
#include "opevo/prop/polynomial.hpp"

namespace opevo {

// Brute-force evolution basis: n-fold application of A = q + c d/dq to the
// unit polynomial, by direct symbolic differentiation. Independent of the
// closed-form coefficients in free_polynomial.
inline PolynomialState recursive_polynomial_oracle(int n, std::complex<double> c) {
    if (n < 0 || n > 32)
        throw std::invalid_argument("recursive_polynomial_oracle: n must be in [0, 32]");
    std::vector<std::complex<double>> u{{1.0, 0.0}};
    for (int step = 0; step < n; ++step) {
        std::vector<std::complex<double>> next(u.size() + 1, {0.0, 0.0});
        for (std::size_t l = 0; l < u.size(); ++l) {
            next[l + 1] += u[l];                                   // q * q^l
            if (l > 0) next[l - 1] += c * double(l) * u[l];        // c d/dq q^l
        }
        u = std::move(next);
    }
    PolynomialState out;
    out.coefficients = std::move(u);
    out.trim();
    return out;
}

// Exact variant in the (q, c) grading: entry l is the rational multiplying
// q^l c^((n-l)/2); the recursion never mixes gradings, so a plain vector
// suffices.
inline std::vector<Rational> recursive_polynomial_oracle_exact(int n) {
    if (n < 0 || n > 32)
        throw std::invalid_argument("recursive_polynomial_oracle_exact: n must be in [0, 32]");
    std::vector<Rational> u{Rational(1)};
    for (int step = 0; step < n; ++step) {
        std::vector<Rational> next(u.size() + 1, Rational(0));
        for (std::size_t l = 0; l < u.size(); ++l) {
            next[l + 1] += u[l];
            if (l > 0) next[l - 1] += Rational(static_cast<long long>(l)) * u[l];
        }
        u = std::move(next);
    }
    return u;
}

} // namespace opevo
