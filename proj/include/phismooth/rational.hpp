#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phismooth {

namespace detail {
inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}
}  // namespace detail

// exact fraction, always reduced with positive denominator
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) { *this = make((__int128)n, (__int128)d); }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = detail::gcd128(n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow after reduction");
        Rational r;
        r.num = (std::int64_t)n;
        r.den = (std::int64_t)d;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.den + (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.den - (__int128)b.num * a.den,
                    (__int128)a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return make((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    double to_double() const { return double(num) / double(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace phismooth
