#pragma once

#include <utility>

#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/integer.hpp"

namespace farey_nielsen {

struct IntVector2 {
    Int p{0}, q{0};

    IntVector2() = default;
    IntVector2(Int pp, Int qq) : p(std::move(pp)), q(std::move(qq)) {}

    bool is_zero() const { return p == 0 && q == 0; }

    friend bool operator==(const IntVector2&, const IntVector2&) = default;

    IntVector2 operator-() const { return {-p, -q}; }
    friend IntVector2 operator+(const IntVector2& a, const IntVector2& b) { return {a.p + b.p, a.q + b.q}; }
    friend IntVector2 operator-(const IntVector2& a, const IntVector2& b) { return {a.p - b.p, a.q - b.q}; }
    friend IntVector2 operator*(const Int& s, const IntVector2& v) { return {s * v.p, s * v.q}; }
};

// det of the 2x2 matrix with columns u, v.
inline Int cross(const IntVector2& u, const IntVector2& v) { return u.p * v.q - u.q * v.p; }

inline Int height(const IntVector2& v) { return abs(v.p) >= abs(v.q) ? abs(v.p) : abs(v.q); }

// Row-major [[a,b],[c,d]].
struct IntMatrix2 {
    Int a{1}, b{0}, c{0}, d{1};

    IntMatrix2() = default;
    IntMatrix2(Int aa, Int bb, Int cc, Int dd)
        : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)), d(std::move(dd)) {}

    static IntMatrix2 identity() { return {1, 0, 0, 1}; }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    bool unimodular() const { return abs(det()) == 1; }

    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    bool is_plus_minus_identity() const {
        return (a == 1 && d == 1 && b == 0 && c == 0) || (a == -1 && d == -1 && b == 0 && c == 0);
    }

    IntMatrix2 adjugate() const { return {d, -b, -c, a}; }

    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;

    IntMatrix2 operator-() const { return {-a, -b, -c, -d}; }

    friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    friend IntVector2 operator*(const IntMatrix2& m, const IntVector2& v) {
        return {m.a * v.p + m.b * v.q, m.c * v.p + m.d * v.q};
    }
};

inline IntMatrix2 mat_mul(const IntMatrix2& x, const IntMatrix2& y) { return x * y; }
inline IntVector2 mat_apply(const IntMatrix2& m, const IntVector2& v) { return m * v; }

inline IntMatrix2 mat_inv(const IntMatrix2& m) {
    Int dt = m.det();
    if (dt == 1) return m.adjugate();
    if (dt == -1) return -m.adjugate();
    throw Error(Errc::NonUnimodular, "matrix inverse requires |det| = 1, got det = " + to_string(dt));
}

// m^n for any integer n; negative powers require |det m| = 1.
inline IntMatrix2 mat_pow(const IntMatrix2& m, const Int& n) {
    IntMatrix2 base = n < 0 ? mat_inv(m) : m;
    Int e = abs(n);
    IntMatrix2 acc = IntMatrix2::identity();
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

inline Int mat_height(const IntMatrix2& m) {
    Int h = abs(m.a);
    if (abs(m.b) > h) h = abs(m.b);
    if (abs(m.c) > h) h = abs(m.c);
    if (abs(m.d) > h) h = abs(m.d);
    return h;
}

}  // namespace farey_nielsen
