#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "opevo/algebra/rational_complex.hpp"
#include "opevo/core/errors.hpp"

namespace opevo {

inline constexpr std::size_t kDefaultDegreeGuard = 32;

// One canonical monomial q^a p^b hbar^h (normal order: all q factors to the
// left of all p factors). hbar is carried as a formal grading so exact
// statements like "no hbar survives in this coefficient" are decidable.
struct Monomial {
    int a = 0; // q power
    int b = 0; // p power
    int h = 0; // hbar power

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial& x, const Monomial& y) {
        return std::tie(x.a, x.b, x.h) <=> std::tie(y.a, y.b, y.h);
    }
};

namespace coeff {

inline bool is_zero(const RationalComplex& c) { return c.is_zero(); }
inline bool is_zero(const std::complex<double>& c) { return c == std::complex<double>{}; }

inline RationalComplex conj(const RationalComplex& c) { return c.conj(); }
inline std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }

template <class C> C from_int(long long v);
template <> inline RationalComplex from_int<RationalComplex>(long long v) { return {Rational(v)}; }
template <> inline std::complex<double> from_int<std::complex<double>>(long long v) {
    return {static_cast<double>(v), 0.0};
}

template <class C> C minus_i();
template <> inline RationalComplex minus_i<RationalComplex>() { return {0, -1}; }
template <> inline std::complex<double> minus_i<std::complex<double>>() { return {0.0, -1.0}; }

template <class C> C i();
template <> inline RationalComplex i<RationalComplex>() { return {0, 1}; }
template <> inline std::complex<double> i<std::complex<double>>() { return {0.0, 1.0}; }

} // namespace coeff

// Finite sum of canonical monomials with exact (RationalComplex) or floating
// (std::complex<double>) coefficients. Multiplication uses the closed-form
// reordering
//   p^b q^a = sum_j j! C(a,j) C(b,j) (-i hbar)^j q^(a-j) p^(b-j)
// which is the j-fold contraction of the single rewrite p q -> q p - i hbar.
template <class C>
class OperatorPolynomial {
public:
    using coefficient_type = C;
    using term_map = std::map<Monomial, C>;

    OperatorPolynomial() = default;

    static OperatorPolynomial monomial(Monomial m, C c) {
        OperatorPolynomial p;
        p.add_term(m, std::move(c));
        return p;
    }
    static OperatorPolynomial one() { return monomial({0, 0, 0}, coeff::from_int<C>(1)); }
    static OperatorPolynomial q() { return monomial({1, 0, 0}, coeff::from_int<C>(1)); }
    static OperatorPolynomial p() { return monomial({0, 1, 0}, coeff::from_int<C>(1)); }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.a + m.b);
        return d;
    }

    void add_term(const Monomial& m, const C& c) {
        if (coeff::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (coeff::is_zero(it->second)) terms_.erase(it);
        }
    }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C{} : it->second;
    }

    OperatorPolynomial& operator+=(const OperatorPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    OperatorPolynomial& operator-=(const OperatorPolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend OperatorPolynomial operator+(OperatorPolynomial x, const OperatorPolynomial& y) {
        return x += y;
    }
    friend OperatorPolynomial operator-(OperatorPolynomial x, const OperatorPolynomial& y) {
        return x -= y;
    }
    OperatorPolynomial operator-() const {
        OperatorPolynomial out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    OperatorPolynomial scaled(const C& s) const {
        OperatorPolynomial out;
        if (coeff::is_zero(s)) return out;
        for (const auto& [m, c] : terms_) out.add_term(m, c * s);
        return out;
    }

    // Multiply by hbar^n (pure grading shift).
    OperatorPolynomial hbar_shifted(int n) const {
        OperatorPolynomial out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.a, m.b, m.h + n}, c);
        return out;
    }

    friend bool operator==(const OperatorPolynomial&, const OperatorPolynomial&) = default;

    friend OperatorPolynomial mul(const OperatorPolynomial& x, const OperatorPolynomial& y,
                                  std::size_t degree_guard = kDefaultDegreeGuard) {
        OperatorPolynomial out;
        for (const auto& [mx, cx] : x.terms_) {
            for (const auto& [my, cy] : y.terms_) {
                if (static_cast<std::size_t>(mx.a + my.a + mx.b + my.b) > degree_guard)
                    throw DegreeGuardError("operator product exceeds degree guard " +
                                           std::to_string(degree_guard));
                // contraction ladder: w_j = w_{j-1} * (a2-j+1)(b1-j+1)/j * (-i)
                C w = cx * cy;
                const int jmax = std::min(my.a, mx.b);
                for (int j = 0; j <= jmax; ++j) {
                    if (j > 0) {
                        w *= coeff::from_int<C>(static_cast<long long>(my.a - j + 1) *
                                                (mx.b - j + 1));
                        w = w * coeff::minus_i<C>() / coeff::from_int<C>(j);
                    }
                    out.add_term({mx.a + my.a - j, mx.b + my.b - j, mx.h + my.h + j}, w);
                }
            }
        }
        return out;
    }

    friend OperatorPolynomial operator*(const OperatorPolynomial& x, const OperatorPolynomial& y) {
        return mul(x, y);
    }

private:
    term_map terms_;
};

using ExactPolynomial = OperatorPolynomial<RationalComplex>;
using NumericPolynomial = OperatorPolynomial<std::complex<double>>;

template <class C>
OperatorPolynomial<C> commutator(const OperatorPolynomial<C>& x, const OperatorPolynomial<C>& y,
                                 std::size_t degree_guard = kDefaultDegreeGuard) {
    return mul(x, y, degree_guard) - mul(y, x, degree_guard);
}

// Formal adjoint: reverse each word and conjugate its coefficient, then
// normal-order. hbar is treated as real.
template <class C>
OperatorPolynomial<C> adjoint(const OperatorPolynomial<C>& x) {
    OperatorPolynomial<C> out;
    for (const auto& [m, c] : x.terms()) {
        auto word = mul(OperatorPolynomial<C>::monomial({0, m.b, m.h}, coeff::conj(c)),
                        OperatorPolynomial<C>::monomial({m.a, 0, 0}, coeff::from_int<C>(1)));
        out += word;
    }
    return out;
}

template <class C>
bool is_hermitian(const OperatorPolynomial<C>& x) {
    return adjoint(x) == x;
}

// Letters for building operator words prior to normal ordering.
enum class OpLetter { Q, P };

// Normal-order a word: prefactor * product of letters, e.g. {P,Q} -> q p - i hbar.
template <class C = RationalComplex>
OperatorPolynomial<C> normal_order(const std::vector<OpLetter>& word, C prefactor = coeff::from_int<C>(1)) {
    auto acc = OperatorPolynomial<C>::monomial({0, 0, 0}, std::move(prefactor));
    for (OpLetter l : word)
        acc = mul(acc, l == OpLetter::Q ? OperatorPolynomial<C>::q() : OperatorPolynomial<C>::p());
    return acc;
}

// Drop every term carrying a positive hbar power (the formal hbar -> 0 limit).
template <class C>
OperatorPolynomial<C> set_hbar_zero(const OperatorPolynomial<C>& x) {
    OperatorPolynomial<C> out;
    for (const auto& [m, c] : x.terms())
        if (m.h == 0) out.add_term(m, c);
    return out;
}

inline NumericPolynomial to_numeric(const ExactPolynomial& x) {
    NumericPolynomial out;
    for (const auto& [m, c] : x.terms()) out.add_term(m, c.to_double());
    return out;
}

// Conjugation by exp(g q^2): substitutes p -> p + 2 i hbar g q throughout and
// normal-orders. (exp(g q^2) p exp(-g q^2) = p + 2 i hbar g q, and functions
// of q are untouched, so this realizes the similarity transform exactly on
// polynomials.)
template <class C>
OperatorPolynomial<C> gaussian_similarity(const OperatorPolynomial<C>& x, const C& g) {
    using Poly = OperatorPolynomial<C>;
    const Poly shifted_p =
        Poly::p() + Poly::monomial({1, 0, 1}, coeff::from_int<C>(2) * coeff::i<C>() * g);
    Poly out;
    for (const auto& [m, c] : x.terms()) {
        Poly term = Poly::monomial({m.a, 0, m.h}, c);
        for (int j = 0; j < m.b; ++j) term = term * shifted_p;
        out += term;
    }
    return out;
}

} // namespace opevo
