#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "consec/errors.hpp"

namespace consec {

/// Exact rational with 64-bit numerator/denominator, normalized with a
/// positive denominator. Large enough for counts up to 12! and their
/// pairwise sums/products (intermediates use 128-bit).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw InvalidInputError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static Rational from_128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        Rational r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        if (static_cast<__int128>(r.num) != n || static_cast<__int128>(r.den) != d)
            throw CapacityError("rational overflow");
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                        static_cast<__int128>(den) * o.den);
    }
    Rational operator-(const Rational& o) const {
        return from_128(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                        static_cast<__int128>(den) * o.den);
    }
    Rational operator*(const Rational& o) const {
        return from_128(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

inline std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace consec
