#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "cutpoint/common.hpp"

namespace cutpoint {

// Exact arbitrary-precision rational. GMP keeps values canonical (lowest
// terms, positive denominator) as long as raw constructions are
// canonicalize()d, which the helpers below take care of.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw error("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Exact dyadic interpretation of a double: every finite double is a rational
// with a power-of-two denominator, and mpq_set_d performs that conversion
// without rounding.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw error("rational_from_double: non-finite value");
    return Rational(x);
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// "p" or "p/q", canonicalized on the way in.
inline Rational parse_rational(std::string_view text) {
    try {
        Rational r(std::string(text), 10);
        if (r.get_den() == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw parse_error("not a rational: '" + std::string(text) + "'");
    }
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace cutpoint
