#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/algebra/operator_polynomial.hpp"

namespace opevo {

// Taylor series of a Heisenberg-picture operator: coefficient n is the
// operator multiplying t^n/n!.
struct TimeSeriesOperator {
    std::vector<ExactPolynomial> coefficients; // length order+1
    std::size_t order = 0;

    const ExactPolynomial& at(std::size_t n) const { return coefficients.at(n); }
};

// dA/dt = [A, H] / (i hbar). In the graded representation the commutator
// always carries at least one power of hbar, so dividing by i hbar keeps
// every exponent nonnegative; this is asserted.
template <class C>
OperatorPolynomial<C> heisenberg_derivative(const OperatorPolynomial<C>& a,
                                            const OperatorPolynomial<C>& h,
                                            std::size_t degree_guard = kDefaultDegreeGuard) {
    auto comm = commutator(a, h, degree_guard);
    OperatorPolynomial<C> out;
    for (const auto& [m, c] : comm.terms()) {
        if (m.h < 1)
            throw std::logic_error(
                "heisenberg_derivative: commutator term without an hbar factor");
        out.add_term({m.a, m.b, m.h - 1}, c * coeff::minus_i<C>());
    }
    return out;
}

inline ExactPolynomial heisenberg_derivative(const ExactPolynomial& a, const HamiltonianSpec& h,
                                             std::size_t degree_guard = kDefaultDegreeGuard) {
    return heisenberg_derivative(a, h.operator_polynomial(), degree_guard);
}

inline TimeSeriesOperator heisenberg_series(const ExactPolynomial& a, const HamiltonianSpec& h,
                                            std::size_t order,
                                            std::size_t degree_guard = kDefaultDegreeGuard) {
    TimeSeriesOperator s;
    s.order = order;
    s.coefficients.reserve(order + 1);
    s.coefficients.push_back(a);
    const ExactPolynomial hp = h.operator_polynomial();
    for (std::size_t n = 1; n <= order; ++n)
        s.coefficients.push_back(heisenberg_derivative(s.coefficients.back(), hp, degree_guard));
    return s;
}

// Numeric evaluation of the series at time t: sum_n t^n/n! C_n with hbar
// substituted, as a floating-coefficient operator polynomial.
inline NumericPolynomial evaluate_series(const TimeSeriesOperator& s, double t, double hbar) {
    NumericPolynomial out;
    double weight = 1.0; // t^n / n!
    for (std::size_t n = 0; n < s.coefficients.size(); ++n) {
        if (n > 0) weight *= t / static_cast<double>(n);
        for (const auto& [m, c] : s.coefficients[n].terms()) {
            const double hscale = std::pow(hbar, m.h);
            out.add_term({m.a, m.b, 0}, c.to_double() * weight * hscale);
        }
    }
    return out;
}

// Formal hbar -> 0 limit applied coefficient-wise.
inline TimeSeriesOperator set_hbar_zero(const TimeSeriesOperator& s) {
    TimeSeriesOperator out;
    out.order = s.order;
    out.coefficients.reserve(s.coefficients.size());
    for (const auto& c : s.coefficients) out.coefficients.push_back(set_hbar_zero(c));
    return out;
}

} // namespace opevo
