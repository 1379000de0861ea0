#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/algebra/operator_polynomial.hpp"
#include "opevo/algebra/series.hpp"

namespace opevo {

// Commutative bivariate polynomial in the initial phase-space data (q, p)
// with exact rational coefficients.
class ClassicalPolynomial {
public:
    using key = std::pair<int, int>; // (q power, p power)
    using term_map = std::map<key, Rational>;

    ClassicalPolynomial() = default;

    static ClassicalPolynomial monomial(int a, int b, Rational c) {
        ClassicalPolynomial p;
        p.add_term(a, b, std::move(c));
        return p;
    }
    static ClassicalPolynomial q() { return monomial(1, 0, 1); }
    static ClassicalPolynomial p() { return monomial(0, 1, 1); }

    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int a, int b, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find({a, b});
        if (it == terms_.end()) {
            terms_.emplace(key{a, b}, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ClassicalPolynomial& operator+=(const ClassicalPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    ClassicalPolynomial& operator-=(const ClassicalPolynomial& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend ClassicalPolynomial operator+(ClassicalPolynomial x, const ClassicalPolynomial& y) {
        return x += y;
    }
    friend ClassicalPolynomial operator-(ClassicalPolynomial x, const ClassicalPolynomial& y) {
        return x -= y;
    }
    friend bool operator==(const ClassicalPolynomial&, const ClassicalPolynomial&) = default;

    // {A, B} = dA/dq dB/dp - dA/dp dB/dq
    friend ClassicalPolynomial poisson_bracket(const ClassicalPolynomial& x,
                                               const ClassicalPolynomial& y) {
        ClassicalPolynomial out;
        for (const auto& [kx, cx] : x.terms_) {
            for (const auto& [ky, cy] : y.terms_) {
                if (kx.first > 0 && ky.second > 0)
                    out.add_term(kx.first + ky.first - 1, kx.second + ky.second - 1,
                                 cx * cy * kx.first * ky.second);
                if (kx.second > 0 && ky.first > 0)
                    out.add_term(kx.first + ky.first - 1, kx.second + ky.second - 1,
                                 -cx * cy * kx.second * ky.first);
            }
        }
        return out;
    }

    double evaluate(double qv, double pv) const {
        double s = 0.0;
        for (const auto& [k, c] : terms_)
            s += static_cast<double>(c) * std::pow(qv, k.first) * std::pow(pv, k.second);
        return s;
    }

private:
    term_map terms_;
};

enum class FlowSource { ClosedForm, TaylorSeries };

// Solution map of Hamilton's equations as Taylor data: Q(q,p,t) and P(q,p,t)
// stored as lists of bivariate polynomials, index n multiplying t^n/n!.
struct ClassicalFlow {
    FlowSource source = FlowSource::TaylorSeries;
    std::vector<ClassicalPolynomial> q_taylor;
    std::vector<ClassicalPolynomial> p_taylor;

    std::size_t order() const { return q_taylor.empty() ? 0 : q_taylor.size() - 1; }
};

// Classical polynomial form of the Hamiltonian (the hbar -> 0 shadow of the
// operator polynomial; the named kinds have no hbar terms to begin with).
inline ClassicalPolynomial classical_hamiltonian(const HamiltonianSpec& h) {
    ClassicalPolynomial out;
    const ExactPolynomial hp = h.operator_polynomial();
    for (const auto& [m, c] : hp.terms()) {
        if (m.h != 0) continue;
        if (c.im != 0)
            throw std::invalid_argument(
                "classical_hamiltonian: complex coefficient in the hbar-free part");
        out.add_term(m.a, m.b, c.re);
    }
    return out;
}

namespace detail {

inline ClassicalFlow closed_form_flow(const HamiltonianSpec& h, std::size_t order) {
    ClassicalFlow f;
    f.source = FlowSource::ClosedForm;
    f.q_taylor.resize(order + 1);
    f.p_taylor.resize(order + 1);
    const Rational m = h.mass;

    auto sign_alt = [](std::size_t half) { return half % 2 == 0 ? Rational(1) : Rational(-1); };

    for (std::size_t n = 0; n <= order; ++n) {
        ClassicalPolynomial& Q = f.q_taylor[n];
        ClassicalPolynomial& P = f.p_taylor[n];
        switch (h.kind) {
            case HamiltonianKind::Free:
                // Q = q + p t / m, P = p
                if (n == 0) { Q.add_term(1, 0, 1); P.add_term(0, 1, 1); }
                if (n == 1) Q.add_term(0, 1, Rational(1) / m);
                break;
            case HamiltonianKind::ConstantForce:
                // Q = q + p t/m + F t^2/(2m), P = p + F t
                if (n == 0) { Q.add_term(1, 0, 1); P.add_term(0, 1, 1); }
                if (n == 1) { Q.add_term(0, 1, Rational(1) / m); P.add_term(0, 0, h.force); }
                if (n == 2) Q.add_term(0, 0, h.force / m);
                break;
            case HamiltonianKind::Harmonic: {
                // Q = q cos(wt) + (p/mw) sin(wt), P = p cos(wt) - m w q sin(wt)
                const Rational w = h.omega;
                Rational wn = 1;
                for (std::size_t j = 0; j < n; ++j) wn *= w;
                if (n % 2 == 0) {
                    Q.add_term(1, 0, sign_alt(n / 2) * wn);
                    P.add_term(0, 1, sign_alt(n / 2) * wn);
                } else {
                    Q.add_term(0, 1, sign_alt((n - 1) / 2) * wn / (m * w));
                    P.add_term(1, 0, -sign_alt((n - 1) / 2) * wn * m * w);
                }
                break;
            }
            case HamiltonianKind::InvertedHarmonic: {
                // Q = q cosh(lt) + (p/ml) sinh(lt), P = p cosh(lt) + m l q sinh(lt)
                const Rational l = h.lambda;
                Rational ln = 1;
                for (std::size_t j = 0; j < n; ++j) ln *= l;
                if (n % 2 == 0) {
                    Q.add_term(1, 0, ln);
                    P.add_term(0, 1, ln);
                } else {
                    Q.add_term(0, 1, ln / (m * l));
                    P.add_term(1, 0, ln * m * l);
                }
                break;
            }
            case HamiltonianKind::Custom:
                throw std::invalid_argument(
                    "classical_flow: closed form requested for a non-quadratic Hamiltonian");
        }
    }
    return f;
}

} // namespace detail

inline ClassicalFlow classical_flow(const HamiltonianSpec& h, FlowSource source,
                                    std::size_t order) {
    if (source == FlowSource::ClosedForm) {
        if (!h.is_quadratic())
            throw std::invalid_argument(
                "classical_flow: closed form requested for a non-quadratic Hamiltonian");
        if (h.kind == HamiltonianKind::Custom)
            throw std::invalid_argument(
                "classical_flow: closed form supports the named quadratic kinds only");
        return detail::closed_form_flow(h, order);
    }
    ClassicalFlow f;
    f.source = FlowSource::TaylorSeries;
    const ClassicalPolynomial hc = classical_hamiltonian(h);
    f.q_taylor.push_back(ClassicalPolynomial::q());
    f.p_taylor.push_back(ClassicalPolynomial::p());
    for (std::size_t n = 1; n <= order; ++n) {
        f.q_taylor.push_back(poisson_bracket(f.q_taylor.back(), hc));
        f.p_taylor.push_back(poisson_bracket(f.p_taylor.back(), hc));
    }
    return f;
}

// Weyl (fully symmetric) quantization of a classical monomial, in
// normal-ordered closed form:
//   W(q^a p^b) = sum_j (-i hbar/2)^j j! C(a,j) C(b,j) q^(a-j) p^(b-j)
// (equivalently the average over all orderings of a q's and b p's).
inline ExactPolynomial weyl_quantize(const ClassicalPolynomial& cp) {
    ExactPolynomial out;
    for (const auto& [k, c] : cp.terms()) {
        const int a = k.first, b = k.second;
        RationalComplex w{c};
        const int jmax = std::min(a, b);
        for (int j = 0; j <= jmax; ++j) {
            if (j > 0) {
                w *= RationalComplex{Rational(a - j + 1) * (b - j + 1) / (2 * j)};
                w *= RationalComplex{0, -1};
            }
            out.add_term({a - j, b - j, j}, w);
        }
    }
    return out;
}

enum class FlowComponent { Position, Momentum };

// Term-wise Weyl quantization of a classical flow, assembled as an operator
// time series. The Hamiltonian argument is carried for interface symmetry
// with heisenberg_series (the flow already encodes the dynamics).
inline TimeSeriesOperator quantize_flow(const ClassicalFlow& flow,
                                        [[maybe_unused]] const HamiltonianSpec& h, std::size_t n,
                                        FlowComponent component = FlowComponent::Position) {
    const auto& taylor =
        component == FlowComponent::Position ? flow.q_taylor : flow.p_taylor;
    if (taylor.size() < n + 1)
        throw std::invalid_argument("quantize_flow: flow order is lower than requested");
    TimeSeriesOperator out;
    out.order = n;
    out.coefficients.reserve(n + 1);
    for (std::size_t j = 0; j <= n; ++j) out.coefficients.push_back(weyl_quantize(taylor[j]));
    return out;
}

} // namespace opevo
