#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace opevo {

using Rational = boost::multiprecision::cpp_rational;

// Exact Gaussian rational a + b*i. Coefficient type for the symbolic
// operator algebra: every claim about series termination or cancellation is
// checked in this type, never in floating point.
struct RationalComplex {
    Rational re{0};
    Rational im{0};

    RationalComplex() = default;
    RationalComplex(Rational r) : re(std::move(r)) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex(int r) : re(r) {}
    RationalComplex(int r, int i) : re(r), im(i) {}

    static RationalComplex i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    RationalComplex conj() const { return {re, -im}; }

    RationalComplex operator-() const { return {-re, -im}; }

    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RationalComplex& operator-=(const RationalComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    RationalComplex& operator*=(const RationalComplex& o) {
        const Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    RationalComplex& operator/=(const RationalComplex& o) {
        const Rational d = o.re * o.re + o.im * o.im;
        const Rational r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }

    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
    friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
    friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
    friend bool operator==(const RationalComplex&, const RationalComplex&) = default;

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// Multiplication by i^n without materializing powers.
inline RationalComplex i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

inline std::string to_string(const Rational& r) {
    return r.str();
}

inline std::string to_string(const RationalComplex& z) {
    if (z.im == 0) return to_string(z.re);
    if (z.re == 0) return to_string(z.im) + "i";
    const std::string imag = z.im > 0 ? "+" + to_string(z.im) : to_string(z.im);
    return "(" + to_string(z.re) + imag + "i)";
}

} // namespace opevo
