#pragma once

#include <cmath>
#include <stdexcept>

namespace opevo {

enum class DispersionKind { NonRelativistic, Relativistic, Massless };

// E(k) for the three transport laws. Stores hbar so energies come out in the
// same units the evolutions use; with hbar = 1, group_velocity is the
// physical transport speed.
struct DispersionRelation {
    DispersionKind kind = DispersionKind::NonRelativistic;
    double mass = 1.0;
    double c = 1.0;
    double hbar = 1.0;

    static DispersionRelation nonrelativistic(double m, double hbar = 1.0) {
        if (!(m > 0.0)) throw std::invalid_argument("DispersionRelation: mass must be positive");
        if (!(hbar > 0.0)) throw std::invalid_argument("DispersionRelation: hbar must be positive");
        return {DispersionKind::NonRelativistic, m, 1.0, hbar};
    }
    static DispersionRelation relativistic(double m, double c, double hbar = 1.0) {
        if (!(m > 0.0)) throw std::invalid_argument("DispersionRelation: mass must be positive");
        if (!(c > 0.0)) throw std::invalid_argument("DispersionRelation: c must be positive");
        if (!(hbar > 0.0)) throw std::invalid_argument("DispersionRelation: hbar must be positive");
        return {DispersionKind::Relativistic, m, c, hbar};
    }
    static DispersionRelation massless(double c, double hbar = 1.0) {
        if (!(c > 0.0)) throw std::invalid_argument("DispersionRelation: c must be positive");
        if (!(hbar > 0.0)) throw std::invalid_argument("DispersionRelation: hbar must be positive");
        return {DispersionKind::Massless, 1.0, c, hbar};
    }

    double energy(double k) const {
        switch (kind) {
            case DispersionKind::NonRelativistic:
                return hbar * hbar * k * k / (2.0 * mass);
            case DispersionKind::Relativistic:
                return std::hypot(hbar * k * c, mass * c * c);
            case DispersionKind::Massless:
                return hbar * std::abs(k) * c;
        }
        return 0.0;
    }
};

// dE/dk, analytically. Massless transport has no defined direction at k = 0.
inline double group_velocity(const DispersionRelation& d, double k) {
    switch (d.kind) {
        case DispersionKind::NonRelativistic:
            return d.hbar * d.hbar * k / d.mass;
        case DispersionKind::Relativistic:
            return d.hbar * d.hbar * k * d.c * d.c / d.energy(k);
        case DispersionKind::Massless:
            if (k == 0.0)
                throw std::invalid_argument("group_velocity: massless direction undefined at k = 0");
            return d.hbar * d.c * (k > 0.0 ? 1.0 : -1.0);
    }
    return 0.0;
}

} // namespace opevo
