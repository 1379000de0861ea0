#pragma once

#include <stdexcept>
#include <utility>

#include "opevo/algebra/operator_polynomial.hpp"

namespace opevo {

enum class HamiltonianKind { Free, ConstantForce, Harmonic, InvertedHarmonic, Custom };

// Named Hamiltonian family. Parameters are exact rationals so the symbolic
// layer can make exact statements; hbar is a numeric scale used only when a
// result is evaluated on a grid.
struct HamiltonianSpec {
    HamiltonianKind kind = HamiltonianKind::Free;
    Rational mass{1};
    Rational force{0};       // ConstantForce
    Rational omega{0};       // Harmonic
    Rational lambda{0};      // InvertedHarmonic
    ExactPolynomial custom;  // Custom
    double hbar = 1.0;

    static HamiltonianSpec free(Rational m, double hbar = 1.0) {
        HamiltonianSpec h;
        h.kind = HamiltonianKind::Free;
        h.mass = std::move(m);
        h.hbar = hbar;
        h.validate();
        return h;
    }
    static HamiltonianSpec constant_force(Rational m, Rational F, double hbar = 1.0) {
        HamiltonianSpec h;
        h.kind = HamiltonianKind::ConstantForce;
        h.mass = std::move(m);
        h.force = std::move(F);
        h.hbar = hbar;
        h.validate();
        return h;
    }
    static HamiltonianSpec harmonic(Rational m, Rational w, double hbar = 1.0) {
        HamiltonianSpec h;
        h.kind = HamiltonianKind::Harmonic;
        h.mass = std::move(m);
        h.omega = std::move(w);
        h.hbar = hbar;
        h.validate();
        return h;
    }
    static HamiltonianSpec inverted_harmonic(Rational m, Rational lam, double hbar = 1.0) {
        HamiltonianSpec h;
        h.kind = HamiltonianKind::InvertedHarmonic;
        h.mass = std::move(m);
        h.lambda = std::move(lam);
        h.hbar = hbar;
        h.validate();
        return h;
    }
    static HamiltonianSpec custom_polynomial(ExactPolynomial poly, double hbar = 1.0) {
        HamiltonianSpec h;
        h.kind = HamiltonianKind::Custom;
        h.custom = std::move(poly);
        h.hbar = hbar;
        h.validate();
        return h;
    }

    void validate() const {
        if (!(hbar > 0.0)) throw std::invalid_argument("HamiltonianSpec: hbar must be positive");
        if (kind != HamiltonianKind::Custom && !(mass > 0))
            throw std::invalid_argument("HamiltonianSpec: mass must be positive");
        if (kind == HamiltonianKind::Harmonic && !(omega > 0))
            throw std::invalid_argument("HamiltonianSpec: omega must be positive");
        if (kind == HamiltonianKind::InvertedHarmonic && !(lambda > 0))
            throw std::invalid_argument("HamiltonianSpec: lambda must be positive");
        if (kind == HamiltonianKind::Custom && !is_hermitian(custom))
            throw std::invalid_argument(
                "HamiltonianSpec: custom polynomial is not Hermitian under the formal adjoint");
    }

    // Normal-ordered operator polynomial of the Hamiltonian.
    ExactPolynomial operator_polynomial() const {
        using P = ExactPolynomial;
        const RationalComplex half_inv_m{Rational(1) / (2 * mass)};
        P kinetic = P::monomial({0, 2, 0}, half_inv_m);
        switch (kind) {
            case HamiltonianKind::Free:
                return kinetic;
            case HamiltonianKind::ConstantForce:
                return kinetic + P::monomial({1, 0, 0}, RationalComplex{-force});
            case HamiltonianKind::Harmonic:
                return kinetic + P::monomial({2, 0, 0}, RationalComplex{mass * omega * omega / 2});
            case HamiltonianKind::InvertedHarmonic:
                return kinetic +
                       P::monomial({2, 0, 0}, RationalComplex{-mass * lambda * lambda / 2});
            case HamiltonianKind::Custom:
                return custom;
        }
        throw std::logic_error("HamiltonianSpec: unknown kind");
    }

    bool is_quadratic() const {
        switch (kind) {
            case HamiltonianKind::Custom:
                return operator_polynomial().degree() <= 2;
            default:
                return true;
        }
    }
};

} // namespace opevo
