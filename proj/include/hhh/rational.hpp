#pragma once

#include <gmpxx.h>

#include <string>

namespace hhh {

// Exact rational scalar over arbitrary-precision integers. GMP keeps values
// in lowest terms with positive denominator; construction goes through rat()
// so the canonical form holds from the start.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string rational_str(const Rational& r) { return r.get_str(); }

}  // namespace hhh
