#pragma once

#include <sstream>
#include <string>

#include "opevo/algebra/operator_polynomial.hpp"
#include "opevo/algebra/series.hpp"

namespace opevo {

// Canonical, diffable text form. Terms appear in map order (sorted by
// (q power, p power, hbar power)); coefficient 1 is elided on non-constant
// monomials.
inline std::string render(const ExactPolynomial& poly) {
    if (poly.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : poly.terms()) {
        std::string body;
        auto append_power = [&body](const char* sym, int n) {
            if (n == 0) return;
            if (!body.empty()) body += ' ';
            body += sym;
            if (n > 1) body += "^" + std::to_string(n);
        };
        append_power("q", m.a);
        append_power("p", m.b);
        append_power("hbar", m.h);

        std::string cs = to_string(c);
        const bool negative = !cs.empty() && cs[0] == '-';
        if (negative) cs.erase(0, 1);
        if (cs == "1" && !body.empty()) cs.clear();

        if (first) {
            if (negative) os << '-';
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (!cs.empty()) {
            os << cs;
            if (!body.empty()) os << ' ';
        }
        os << (body.empty() && cs.empty() ? "1" : body);
    }
    return os.str();
}

inline std::string render(const TimeSeriesOperator& series, const std::string& name) {
    std::ostringstream os;
    os << name << "(t), truncation order " << series.order << "\n";
    std::size_t last_nonzero = 0;
    for (std::size_t n = 0; n < series.coefficients.size(); ++n)
        if (!series.coefficients[n].is_zero()) last_nonzero = n;
    for (std::size_t n = 0; n < series.coefficients.size(); ++n)
        os << "  t^" << n << "/" << n << "! : " << render(series.coefficients[n]) << "\n";
    if (last_nonzero + 1 < series.coefficients.size())
        os << "  (all coefficients beyond order " << last_nonzero << " vanish identically)\n";
    return os.str();
}

} // namespace opevo
