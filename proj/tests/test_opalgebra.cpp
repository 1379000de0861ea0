#include <catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "opevo/algebra/classical.hpp"
#include "opevo/algebra/grid_apply.hpp"
#include "opevo/algebra/hamiltonian.hpp"
#include "opevo/algebra/operator_polynomial.hpp"
#include "opevo/algebra/render.hpp"
#include "opevo/algebra/series.hpp"
#include "opevo/core/window.hpp"

using namespace opevo;

namespace {

using EP = ExactPolynomial;
using RC = RationalComplex;

EP term(int a, int b, int h, RC c) { return EP::monomial({a, b, h}, std::move(c)); }

EP random_poly(std::mt19937& rng, int max_deg, int n_terms) {
    std::uniform_int_distribution<int> pw(0, max_deg);
    std::uniform_int_distribution<int> cf(-3, 3);
    EP out;
    for (int t = 0; t < n_terms; ++t) {
        int a = pw(rng), b = pw(rng);
        if (a + b > max_deg) b = max_deg - a;
        out += term(a, b, 0, RC{cf(rng), cf(rng)});
    }
    return out;
}

// Embed a classical polynomial as an hbar-free operator polynomial so exact
// comparisons against symbolic series are possible.
EP lift(const ClassicalPolynomial& cp) {
    EP out;
    for (const auto& [k, c] : cp.terms()) out += term(k.first, k.second, 0, RC{c});
    return out;
}

EP quartic_poly() {
    return term(0, 2, 0, RC{Rational(1) / 2}) + term(4, 0, 0, RC{1});
}

} // namespace

TEST_CASE("normal ordering of short words") {
    const EP qp = term(1, 1, 0, RC{1});
    const EP ihbar = term(0, 0, 1, RC{0, 1});

    // p q = q p - i hbar
    CHECK(normal_order({OpLetter::P, OpLetter::Q}) == qp - ihbar);
    // p^2 q = q p^2 - 2 i hbar p
    CHECK(normal_order({OpLetter::P, OpLetter::P, OpLetter::Q}) ==
          term(1, 2, 0, RC{1}) - term(0, 1, 1, RC{0, 2}));
    // p q p = q p^2 - i hbar p
    CHECK(normal_order({OpLetter::P, OpLetter::Q, OpLetter::P}) ==
          term(1, 2, 0, RC{1}) - term(0, 1, 1, RC{0, 1}));
    // already-ordered words come back untouched
    CHECK(normal_order({OpLetter::Q, OpLetter::Q, OpLetter::P}) == term(2, 1, 0, RC{1}));
    // prefactor rides along linearly
    CHECK(normal_order({OpLetter::P, OpLetter::Q}, RC{3}) == (qp - ihbar).scaled(RC{3}));
}

TEST_CASE("commutator identities") {
    const EP q = EP::q(), p = EP::p();

    CHECK(commutator(q, p) == term(0, 0, 1, RC{0, 1}));            // [q,p] = i hbar
    CHECK(commutator(q, q * q).is_zero());                          // self-commuting
    CHECK(commutator(q, p * p) == term(0, 1, 1, RC{0, 2}));        // 2 i hbar p
    CHECK(commutator(q * q, p * p) ==
          term(1, 1, 1, RC{0, 4}) + term(0, 0, 2, RC{2}));         // 4 i hbar q p + 2 hbar^2
    CHECK(commutator(p, q) == -commutator(q, p));
}

TEST_CASE("multiplication is associative, commutator satisfies Jacobi") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const EP a = random_poly(rng, 4, 4);
        const EP b = random_poly(rng, 4, 4);
        const EP c = random_poly(rng, 4, 4);
        CHECK((a * b) * c == a * (b * c));
    }
    for (int trial = 0; trial < 20; ++trial) {
        const EP a = random_poly(rng, 3, 3);
        const EP b = random_poly(rng, 3, 3);
        const EP c = random_poly(rng, 3, 3);
        const EP jacobi = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
                          commutator(commutator(c, a), b);
        CHECK(jacobi.is_zero());
    }
}

TEST_CASE("degree guard on products") {
    const EP big = term(20, 0, 0, RC{1});
    CHECK_THROWS_AS(big * big, DegreeGuardError);
    CHECK_NOTHROW(mul(big, big, 64));
}

TEST_CASE("adjoint and hermiticity") {
    const EP qp = term(1, 1, 0, RC{1});
    // (q p)^dag = p q = q p - i hbar
    CHECK(adjoint(qp) == qp - term(0, 0, 1, RC{0, 1}));
    CHECK_FALSE(is_hermitian(qp));
    CHECK(is_hermitian(qp + qp - term(0, 0, 1, RC{0, 1}))); // q p + p q

    std::mt19937 rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const EP a = random_poly(rng, 4, 4);
        CHECK(adjoint(adjoint(a)) == a);
    }

    for (const auto& h : {HamiltonianSpec::free(2), HamiltonianSpec::constant_force(1, 3),
                          HamiltonianSpec::harmonic(1, 2), HamiltonianSpec::inverted_harmonic(2, 3)})
        CHECK(is_hermitian(h.operator_polynomial()));
}

TEST_CASE("hamiltonian spec validation") {
    CHECK_THROWS_AS(HamiltonianSpec::free(-1), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSpec::harmonic(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSpec::free(1, 0.0), std::invalid_argument);
    // custom Hamiltonians must be Hermitian
    CHECK_THROWS_AS(HamiltonianSpec::custom_polynomial(term(1, 1, 0, RC{1})),
                    std::invalid_argument);
    CHECK_NOTHROW(HamiltonianSpec::custom_polynomial(quartic_poly()));
    CHECK(HamiltonianSpec::harmonic(1, 2).operator_polynomial() ==
          term(0, 2, 0, RC{Rational(1) / 2}) + term(2, 0, 0, RC{2}));
    CHECK(HamiltonianSpec::constant_force(1, 3).operator_polynomial() ==
          term(0, 2, 0, RC{Rational(1) / 2}) - term(1, 0, 0, RC{3}));
    CHECK(HamiltonianSpec::free(2).is_quadratic());
    CHECK_FALSE(HamiltonianSpec::custom_polynomial(quartic_poly()).is_quadratic());
}

TEST_CASE("heisenberg derivative for the named kinds") {
    const EP q = EP::q(), p = EP::p();

    CHECK(heisenberg_derivative(q, HamiltonianSpec::free(2)) ==
          term(0, 1, 0, RC{Rational(1) / 2}));
    CHECK(heisenberg_derivative(p, HamiltonianSpec::constant_force(1, 3)) ==
          term(0, 0, 0, RC{3}));
    CHECK(heisenberg_derivative(q, HamiltonianSpec::harmonic(1, 2)) == p);
    CHECK(heisenberg_derivative(p, HamiltonianSpec::harmonic(1, 2)) ==
          term(1, 0, 0, RC{-4})); // -m w^2 q
}

TEST_CASE("heisenberg series terminates for free and constant force") {
    const auto s_free = heisenberg_series(EP::q(), HamiltonianSpec::free(2), 5);
    REQUIRE(s_free.coefficients.size() == 6);
    CHECK(s_free.at(0) == EP::q());
    CHECK(s_free.at(1) == term(0, 1, 0, RC{Rational(1) / 2}));
    for (std::size_t n = 2; n <= 5; ++n) CHECK(s_free.at(n).is_zero());

    const auto s_cf = heisenberg_series(EP::q(), HamiltonianSpec::constant_force(1, 3), 3);
    CHECK(s_cf.at(1) == EP::p());
    CHECK(s_cf.at(2) == term(0, 0, 0, RC{3})); // F/m against the t^2/2! weight
    CHECK(s_cf.at(3).is_zero());

    const auto s_p = heisenberg_series(EP::p(), HamiltonianSpec::constant_force(1, 3), 2);
    CHECK(s_p.at(1) == term(0, 0, 0, RC{3}));
    CHECK(s_p.at(2).is_zero());
}

TEST_CASE("heisenberg series reproduces trig and hyperbolic coefficients") {
    // q(t) = q cos(wt) + (p/mw) sin(wt): even n -> (-1)^(n/2) w^n q,
    // odd n -> (-1)^((n-1)/2) w^(n-1)/m p
    const Rational w = 2, m = 1;
    const auto s = heisenberg_series(EP::q(), HamiltonianSpec::harmonic(m, w), 8);
    Rational wn = 1;
    for (std::size_t n = 0; n <= 8; ++n) {
        const Rational sign = (n / 2) % 2 == 0 ? 1 : -1;
        if (n % 2 == 0) {
            CHECK(s.at(n) == term(1, 0, 0, RC{sign * wn}));
        } else {
            const Rational sign_odd = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
            CHECK(s.at(n) == term(0, 1, 0, RC{sign_odd * wn / (m * w)}));
        }
        wn *= w;
        // no hbar anywhere in a quadratic-family series
        for (const auto& [mono, c] : s.at(n).terms()) CHECK(mono.h == 0);
    }

    // inverted potential: same pattern without sign alternation
    const Rational lam = 3, m2 = 2;
    const auto sh = heisenberg_series(EP::q(), HamiltonianSpec::inverted_harmonic(m2, lam), 6);
    Rational ln = 1;
    for (std::size_t n = 0; n <= 6; ++n) {
        if (n % 2 == 0)
            CHECK(sh.at(n) == term(1, 0, 0, RC{ln}));
        else
            CHECK(sh.at(n) == term(0, 1, 0, RC{ln / (m2 * lam)}));
        ln *= lam;
    }
}

TEST_CASE("classical flows: closed form and taylor recursion agree") {
    const auto free_flow = classical_flow(HamiltonianSpec::free(2), FlowSource::ClosedForm, 3);
    CHECK(free_flow.q_taylor[0] == ClassicalPolynomial::q());
    CHECK(free_flow.q_taylor[1] == ClassicalPolynomial::monomial(0, 1, Rational(1) / 2));
    CHECK(free_flow.q_taylor[2].is_zero());
    CHECK(free_flow.p_taylor[0] == ClassicalPolynomial::p());
    CHECK(free_flow.p_taylor[1].is_zero());

    const auto cf = classical_flow(HamiltonianSpec::constant_force(1, 3), FlowSource::ClosedForm, 3);
    CHECK(cf.q_taylor[2] == ClassicalPolynomial::monomial(0, 0, 3));
    CHECK(cf.p_taylor[1] == ClassicalPolynomial::monomial(0, 0, 3));
    CHECK(cf.p_taylor[2].is_zero());

    // the two construction routes must agree exactly for quadratic kinds
    for (const auto& h : {HamiltonianSpec::free(2), HamiltonianSpec::constant_force(1, 3),
                          HamiltonianSpec::harmonic(1, 2), HamiltonianSpec::inverted_harmonic(2, 3)}) {
        const auto closed = classical_flow(h, FlowSource::ClosedForm, 6);
        const auto taylor = classical_flow(h, FlowSource::TaylorSeries, 6);
        CHECK(closed.q_taylor == taylor.q_taylor);
        CHECK(closed.p_taylor == taylor.p_taylor);
    }

    // hyperbolic Taylor data for the inverted potential
    const Rational lam = 3, m = 2;
    const auto inv =
        classical_flow(HamiltonianSpec::inverted_harmonic(m, lam), FlowSource::TaylorSeries, 6);
    Rational ln = 1;
    for (std::size_t n = 0; n <= 6; ++n) {
        if (n % 2 == 0)
            CHECK(inv.q_taylor[n] == ClassicalPolynomial::monomial(1, 0, ln));
        else
            CHECK(inv.q_taylor[n] == ClassicalPolynomial::monomial(0, 1, ln / (m * lam)));
        ln *= lam;
    }

    CHECK_THROWS_AS(
        classical_flow(HamiltonianSpec::custom_polynomial(quartic_poly()), FlowSource::ClosedForm, 4),
        std::invalid_argument);
}

TEST_CASE("poisson bracket and evaluation") {
    const auto q = ClassicalPolynomial::q(), p = ClassicalPolynomial::p();
    CHECK(poisson_bracket(q, p) == ClassicalPolynomial::monomial(0, 0, 1));
    CHECK(poisson_bracket(ClassicalPolynomial::monomial(2, 1, 1), p) ==
          ClassicalPolynomial::monomial(1, 1, 2)); // {q^2 p, p} = 2 q p

    const auto hc = classical_hamiltonian(HamiltonianSpec::harmonic(1, 2));
    CHECK(hc.evaluate(2.0, 3.0) == Catch::Approx(12.5)); // p^2/2 + 2 q^2
}

TEST_CASE("hbar to zero recovers the classical taylor flow") {
    const auto h = HamiltonianSpec::custom_polynomial(quartic_poly());
    const auto series = set_hbar_zero(heisenberg_series(EP::q(), h, 6));
    const auto flow = classical_flow(h, FlowSource::TaylorSeries, 6);
    for (std::size_t n = 0; n <= 6; ++n) CHECK(series.at(n) == lift(flow.q_taylor[n]));

    // with hbar kept, the quantum series grows genuine hbar^2 corrections
    const auto full = heisenberg_series(EP::q(), h, 6);
    bool has_hbar = false;
    for (const auto& c : full.coefficients)
        for (const auto& [m, cc] : c.terms())
            if (m.h > 0) has_hbar = true;
    CHECK(has_hbar);
}

TEST_CASE("weyl quantization of low monomials") {
    const auto W = [](int a, int b) {
        return weyl_quantize(ClassicalPolynomial::monomial(a, b, 1));
    };

    CHECK(W(1, 1) == term(1, 1, 0, RC{1}) - term(0, 0, 1, RC{0, Rational(1) / 2}));
    CHECK(W(2, 0) == term(2, 0, 0, RC{1}));
    CHECK(W(2, 1) == term(2, 1, 0, RC{1}) - term(1, 0, 1, RC{0, 1}));
    CHECK(W(2, 2) == term(2, 2, 0, RC{1}) - term(1, 1, 1, RC{0, 2}) -
                     term(0, 0, 2, RC{Rational(1) / 2}));

    // cross-check against the explicit average over orderings
    const auto avg3 = (normal_order({OpLetter::Q, OpLetter::Q, OpLetter::P}) +
                       normal_order({OpLetter::Q, OpLetter::P, OpLetter::Q}) +
                       normal_order({OpLetter::P, OpLetter::Q, OpLetter::Q}))
                          .scaled(RC{Rational(1) / 3});
    CHECK(W(2, 1) == avg3);
    const auto avg2 = (normal_order({OpLetter::Q, OpLetter::P}) +
                       normal_order({OpLetter::P, OpLetter::Q}))
                          .scaled(RC{Rational(1) / 2});
    CHECK(W(1, 1) == avg2);

    // real classical input gives a formally Hermitian operator
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pw(0, 3), cf(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        ClassicalPolynomial cp;
        for (int t = 0; t < 4; ++t) cp.add_term(pw(rng), pw(rng), cf(rng));
        CHECK(is_hermitian(weyl_quantize(cp)));
    }
}

TEST_CASE("quantized flows equal heisenberg series for quadratic kinds") {
    for (const auto& h : {HamiltonianSpec::free(2), HamiltonianSpec::constant_force(1, 3),
                          HamiltonianSpec::harmonic(1, 2), HamiltonianSpec::inverted_harmonic(2, 3)}) {
        const auto flow = classical_flow(h, FlowSource::TaylorSeries, 6);
        const auto via_q = quantize_flow(flow, h, 6, FlowComponent::Position);
        const auto direct_q = heisenberg_series(EP::q(), h, 6);
        CHECK(via_q.coefficients == direct_q.coefficients);

        const auto via_p = quantize_flow(flow, h, 6, FlowComponent::Momentum);
        const auto direct_p = heisenberg_series(EP::p(), h, 6);
        CHECK(via_p.coefficients == direct_p.coefficients);
    }

    const auto h = HamiltonianSpec::free(1);
    const auto flow = classical_flow(h, FlowSource::TaylorSeries, 2);
    CHECK_THROWS_AS(quantize_flow(flow, h, 5), std::invalid_argument);
}

TEST_CASE("quantized quartic flow first deviates at order six") {
    // no ordering rule applied to the classical trajectory can reproduce the
    // operator series beyond quadratic Hamiltonians; for p^2/2 + q^4 the gap
    // opens at order 6 with an exact hbar^2 operator correction
    const auto h = HamiltonianSpec::custom_polynomial(quartic_poly());
    const auto flow = classical_flow(h, FlowSource::TaylorSeries, 6);
    const auto via = quantize_flow(flow, h, 6, FlowComponent::Position);
    const auto direct = heisenberg_series(EP::q(), h, 6);
    for (std::size_t n = 0; n <= 5; ++n) CHECK(via.at(n) == direct.at(n));
    CHECK(direct.at(6) - via.at(6) == term(1, 0, 2, RC{-144}));
}

TEST_CASE("gaussian similarity substitutes the momentum operator") {
    const EP p = EP::p();
    // g = 1/(2 q0^2) with q0 = 1: p -> p + i hbar q
    CHECK(gaussian_similarity(p, RC{Rational(1) / 2}) == p + term(1, 0, 1, RC{0, 1}));
    // functions of q are untouched
    CHECK(gaussian_similarity(term(3, 0, 0, RC{2}), RC{Rational(1) / 2}) == term(3, 0, 0, RC{2}));
    // p^2 expansion at g = 1/2
    CHECK(gaussian_similarity(p * p, RC{Rational(1) / 2}) ==
          term(0, 2, 0, RC{1}) + term(1, 1, 1, RC{0, 2}) + term(0, 0, 2, RC{1}) -
              term(2, 0, 2, RC{1}));
    // imaginary g turns the shift real
    CHECK(gaussian_similarity(p, RC{0, Rational(1) / 2}) == p - term(1, 0, 1, RC{1}));

    // conjugation is an algebra homomorphism and invertible
    std::mt19937 rng(9);
    const RC g{Rational(1) / 3};
    for (int trial = 0; trial < 10; ++trial) {
        const EP x = random_poly(rng, 3, 3);
        const EP y = random_poly(rng, 3, 3);
        CHECK(gaussian_similarity(x * y, g) == gaussian_similarity(x, g) * gaussian_similarity(y, g));
        CHECK(gaussian_similarity(gaussian_similarity(x, g), -g) == x);
    }
}

TEST_CASE("applying operator polynomials to grid states") {
    const auto g = build_grid(512, -16.0, 16.0);
    auto psi = make_gaussian(g, 0.0, 1.0, 0.0);

    // identity
    const auto same = apply_operator_polynomial(EP::one(), psi);
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j)
        CHECK(std::abs(same.amplitudes[j] - psi.amplitudes[j]) < 1e-14);

    // commutator as a grid identity: q(p psi) - p(q psi) = i hbar psi
    auto qpsi = psi;
    for (std::size_t j = 0; j < qpsi.amplitudes.size(); ++j)
        qpsi.amplitudes[j] *= g.q_at(j);
    const auto lhs = apply_operator_polynomial(term(1, 1, 0, RC{1}), psi);
    const auto rhs = apply_operator_polynomial(EP::p(), qpsi);
    double worst = 0.0;
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
        const std::complex<double> expect = std::complex<double>(0.0, psi.hbar) * psi.amplitudes[j];
        worst = std::max(worst, std::abs(lhs.amplitudes[j] - rhs.amplitudes[j] - expect));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("momentum operator on a near-monochromatic packet") {
    const auto g = build_grid(1024, -20.0, 20.0);
    const double k0 = std::numbers::pi; // on-grid: exactly periodic carrier
    const auto window = plateau_window(g, 13.0, 1.0);

    WaveFunction psi;
    psi.grid = g;
    psi.representation = Representation::Position;
    psi.amplitudes.resize(g.n_points);
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
        const double q = g.q_at(j);
        psi.amplitudes[j] = window[j] * std::exp(std::complex<double>(0.0, k0 * q));
    }

    const auto out = apply_operator_polynomial(EP::p(), psi);
    double worst = 0.0;
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j) {
        if (std::abs(g.q_at(j)) > 5.0) continue;
        const auto expect = psi.hbar * k0 * psi.amplitudes[j];
        worst = std::max(worst, std::abs(out.amplitudes[j] - expect) / std::abs(expect));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("spectral overflow guard") {
    const auto g = build_grid(512, -16.0, 16.0);
    const auto psi = make_gaussian(g, 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(apply_operator_polynomial(NumericPolynomial::monomial({0, 200, 0}, 1.0), psi),
                    OverflowGuardError);
}

TEST_CASE("numeric series evaluation") {
    const auto s = heisenberg_series(EP::q(), HamiltonianSpec::free(2), 4);
    const auto at = evaluate_series(s, 0.5, 1.0);
    CHECK(std::abs(at.coefficient({1, 0, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(at.coefficient({0, 1, 0}) - 0.25) < 1e-15);
    CHECK(at.size() == 2);

    // hbar is substituted numerically, grading collapses to zero
    const auto w = weyl_quantize(ClassicalPolynomial::monomial(1, 1, 1));
    TimeSeriesOperator ts;
    ts.order = 0;
    ts.coefficients = {w};
    const auto num = evaluate_series(ts, 0.0, 2.0);
    CHECK(std::abs(num.coefficient({0, 0, 0}) - std::complex<double>(0.0, -1.0)) < 1e-15);
}

TEST_CASE("rendered text forms") {
    CHECK(render(EP{}) == "0");
    CHECK(render(EP::one()) == "1");
    CHECK(render(normal_order({OpLetter::P, OpLetter::Q})) == "-1i hbar + q p");
    CHECK(render(HamiltonianSpec::harmonic(1, 2).operator_polynomial()) == "1/2 p^2 + 2 q^2");
    CHECK(render(term(2, 1, 0, RC{-1}) + term(0, 0, 2, RC{Rational(3) / 4})) ==
          "3/4 hbar^2 - q^2 p");

    const auto s = heisenberg_series(EP::q(), HamiltonianSpec::free(2), 3);
    CHECK(render(s, "q") ==
          "q(t), truncation order 3\n"
          "  t^0/0! : q\n"
          "  t^1/1! : 1/2 p\n"
          "  t^2/2! : 0\n"
          "  t^3/3! : 0\n"
          "  (all coefficients beyond order 1 vanish identically)\n");
}
