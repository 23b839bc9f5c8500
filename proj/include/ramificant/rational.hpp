#pragma once

// Arbitrary-precision rationals, backed by GMP's mpq_class.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "ramificant/errors.hpp"

namespace ramificant {

/// Always canonical: denominator positive, gcd 1, zero as 0/1.
using BigRational = mpq_class;

inline BigRational make_rational(long num, long den = 1) {
    if (den == 0) throw UsageError("rational with zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

/// Exact: every finite double is a dyadic rational.
inline BigRational rational_from_double(double x) {
    if (!std::isfinite(x)) throw UsageError("non-finite value cannot be made rational");
    return BigRational(x);
}

/// "num/den" with the denominator always written, e.g. "2/1".
inline std::string to_fraction_string(const BigRational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "n", "n/d" or "-n/d".
inline BigRational parse_rational(std::string_view text) {
    std::string s(text);
    BigRational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw UsageError("malformed rational: '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace ramificant
