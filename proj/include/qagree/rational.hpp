#pragma once

#include <cstdint>
#include <string>

#include "qagree/errors.hpp"

namespace qagree {

// Exact rational arithmetic on 64-bit numerator/denominator, normalized so
// den > 0 and gcd(|num|, den) = 1. Intermediates use 128-bit products;
// overflow after reduction throws.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_zero() const { return num == 0; }
    bool is_negative() const { return num < 0; }

    Rational operator-() const { return Rational(-num, den); }
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);

inline bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
bool operator<(const Rational& a, const Rational& b);
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

std::string to_string(const Rational& r);

// Best rational approximation with denominator <= max_den; fails (returns
// false) when no such rational lies within `tol` of x.
bool try_rational_from_double(double x, Rational& out, long long max_den = 1000000,
                              double tol = 1e-12);

// Accepts "p/q", integers, and decimal literals.
Rational parse_rational(const std::string& text);

}  // namespace qagree
