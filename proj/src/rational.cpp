#include "qagree/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qagree {

namespace {

using int128 = __int128;

long long checked_narrow(int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}

Rational normalized(int128 n, int128 d, const char* what) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { int128 t = a % b; a = b; b = t; }
    if (a != 0) { n /= a; d /= a; }
    Rational r;
    r.num = checked_narrow(n, what);
    r.den = checked_narrow(d, what);
    return r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    *this = normalized(n, d, "construction");
}

Rational operator+(const Rational& a, const Rational& b) {
    return normalized(int128(a.num) * b.den + int128(b.num) * a.den, int128(a.den) * b.den, "+");
}

Rational operator-(const Rational& a, const Rational& b) {
    return normalized(int128(a.num) * b.den - int128(b.num) * a.den, int128(a.den) * b.den, "-");
}

Rational operator*(const Rational& a, const Rational& b) {
    return normalized(int128(a.num) * b.num, int128(a.den) * b.den, "*");
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw Error("rational division by zero");
    return normalized(int128(a.num) * b.den, int128(a.den) * b.num, "/");
}

bool operator<(const Rational& a, const Rational& b) {
    return int128(a.num) * b.den < int128(b.num) * a.den;
}

std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

bool try_rational_from_double(double x, Rational& out, long long max_den, double tol) {
    if (!std::isfinite(x)) return false;
    // Continued-fraction convergents.
    const double sign = x < 0 ? -1.0 : 1.0;
    double v = std::abs(x);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(frac);
        if (fl > static_cast<double>(INT64_MAX / 2)) break;
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_den || p2 < 0 || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(v - static_cast<double>(p1) / q1) <= tol) {
            out = Rational(sign < 0 ? -p1 : p1, q1);
            return true;
        }
        const double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 > 0 && std::abs(v - static_cast<double>(p1) / q1) <= tol) {
        out = Rational(sign < 0 ? -p1 : p1, q1);
        return true;
    }
    return false;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const long long n = std::stoll(text.substr(0, slash));
            const long long d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        }
        if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
            text.find('E') == std::string::npos) {
            return Rational(std::stoll(text));
        }
    } catch (const std::exception&) {
        throw ParseError("cannot parse rational: '" + text + "'");
    }
    Rational r;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !try_rational_from_double(v, r))
        throw ParseError("cannot parse rational: '" + text + "'");
    return r;
}

}  // namespace qagree
