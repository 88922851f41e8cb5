#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "farey_nielsen/errors.hpp"

namespace farey_nielsen {

// All arithmetic in the library is exact. Orbit coordinates grow
// exponentially under hyperbolic matrices, so there is no fixed-width path.
using Int = boost::multiprecision::cpp_int;

inline int sign_of(const Int& x) { return x.sign(); }

inline Int gcd_of(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Division rounding toward -inf (operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

// Floor of sqrt(n) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw InternalError("isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// n = square * free with free squarefree; sign of n goes to free.
inline std::pair<Int, Int> squarefree_split(const Int& n) {
    if (n == 0) return {Int(1), Int(0)};
    Int square = 1;
    Int rest = abs(n);
    for (Int p = 2; p * p <= rest; ++p) {
        Int pp = p * p;
        while (rest % pp == 0) {
            rest /= pp;
            square *= p;
        }
    }
    if (n < 0) rest = -rest;
    return {square, rest};
}

inline bool fits_int64(const Int& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Int& x) { return x.convert_to<std::int64_t>(); }

inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline std::string to_string(const Int& x) { return x.str(); }

}  // namespace farey_nielsen
