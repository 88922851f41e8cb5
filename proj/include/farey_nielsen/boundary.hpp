#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>

#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"

namespace farey_nielsen {

// Reduced fraction with den >= 0; (1, 0) is the point at infinity.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int num, Int den) {
        if (num == 0 && den == 0) throw Error(Errc::ZeroVector, "0/0 is not a boundary point");
        Int g = gcd_of(num, den);
        num /= g;
        den /= g;
        if (den < 0 || (den == 0 && num < 0)) { num = -num; den = -den; }
        num_ = std::move(num);
        den_ = std::move(den);
    }
    explicit Rational(Int value) : num_(std::move(value)), den_(1) {}

    static Rational infinity() { return Rational(1, 0); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_infinity() const { return den_ == 0; }

    friend bool operator==(const Rational&, const Rational&) = default;

    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }

    std::string str() const { return is_infinity() ? "inf" : (den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_)); }

private:
    Int num_, den_;
};

// (p + q sqrt(d)) / r with r > 0, gcd(p,q,r) = 1, q != 0 and d squarefree > 1.
class QuadraticIrrational {
public:
    QuadraticIrrational(Int p, Int q, Int r, Int d) {
        if (r == 0) throw Error(Errc::Parse, "quadratic irrational with zero denominator");
        if (d <= 1) throw InternalError("quadratic irrational requires d > 1");
        auto [s, free] = squarefree_split(d);
        d = free;
        q *= s;
        if (d <= 1) throw InternalError("quadratic irrational collapsed to a rational");
        if (q == 0) throw InternalError("quadratic irrational with zero radical part");
        if (r < 0) { p = -p; q = -q; r = -r; }
        Int g = gcd_of(gcd_of(p, q), r);
        p_ = p / g;
        q_ = q / g;
        r_ = r / g;
        d_ = std::move(d);
    }

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    const Int& d() const { return d_; }

    QuadraticIrrational conjugate() const { return QuadraticIrrational(p_, -q_, r_, d_); }

    friend bool operator==(const QuadraticIrrational&, const QuadraticIrrational&) = default;

    std::string str() const {
        return "(" + to_string(p_) + (q_ < 0 ? "" : "+") + to_string(q_) + "*sqrt(" + to_string(d_) + "))/" + to_string(r_);
    }

private:
    Int p_, q_, r_, d_;
};

// sign of x + y sqrt(d), d > 1 non-square.
inline int sign_plus_root(const Int& x, const Int& y, const Int& d) {
    int sx = sign_of(x), sy = sign_of(y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    Int lhs = x * x, rhs = y * y * d;
    if (lhs == rhs) throw InternalError("sqrt(d) compared equal to a rational");
    return lhs > rhs ? sx : sy;
}

// sign of x + y1 sqrt(d1) + y2 sqrt(d2) with d1 != d2 squarefree.
inline int sign_two_roots(const Int& x, const Int& y1, const Int& d1, const Int& y2, const Int& d2) {
    int left = sign_plus_root(x, y1, d1);   // x + y1 sqrt(d1)
    int right = -sign_of(y2);               // vs -y2 sqrt(d2)
    if (left != right) return left > right ? 1 : -1;
    if (left == 0) return 0;
    // same nonzero sign: compare squares, (x + y1 sqrt(d1))^2 vs y2^2 d2
    Int a0 = x * x + y1 * y1 * d1 - y2 * y2 * d2;
    Int b1 = 2 * x * y1;
    int s = sign_plus_root(a0, b1, d1);
    return left > 0 ? s : -s;
}

class BoundaryPoint {
public:
    BoundaryPoint() : v_(Rational(0, 1)) {}
    BoundaryPoint(Rational r) : v_(std::move(r)) {}
    BoundaryPoint(QuadraticIrrational qi) : v_(std::move(qi)) {}

    static BoundaryPoint infinity() { return BoundaryPoint(Rational::infinity()); }

    // Dispatches to a rational when the radical part vanishes or d is square.
    static BoundaryPoint make(const Int& p, const Int& q, const Int& r, const Int& d) {
        if (q == 0 || d == 0) return BoundaryPoint(Rational(p, r));
        Int root;
        if (d > 0 && is_perfect_square(d, &root)) return BoundaryPoint(Rational(p + q * root, r));
        if (d < 0) throw InternalError("boundary point with negative radicand");
        return BoundaryPoint(QuadraticIrrational(p, q, r, d));
    }

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_irrational() const { return std::holds_alternative<QuadraticIrrational>(v_); }
    bool is_infinity() const { return is_rational() && rational().is_infinity(); }

    const Rational& rational() const { return std::get<Rational>(v_); }
    const QuadraticIrrational& irrational() const { return std::get<QuadraticIrrational>(v_); }

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

    std::string str() const { return is_rational() ? rational().str() : irrational().str(); }

private:
    std::variant<Rational, QuadraticIrrational> v_;
};

// Exact total order on the compactified line; infinity is the maximal element.
inline int qi_compare(const BoundaryPoint& x, const BoundaryPoint& y) {
    bool xi = x.is_infinity(), yi = y.is_infinity();
    if (xi || yi) return xi == yi ? 0 : (xi ? 1 : -1);

    if (x.is_rational() && y.is_rational()) {
        Int lhs = x.rational().num() * y.rational().den();
        Int rhs = y.rational().num() * x.rational().den();
        return lhs == rhs ? 0 : (lhs > rhs ? 1 : -1);
    }
    if (x.is_rational()) return -qi_compare(y, x);
    const QuadraticIrrational& a = x.irrational();
    if (y.is_rational()) {
        // (p + q sqrt(d))/r vs n/m: sign of (p m - n r) + q m sqrt(d)
        const Rational& b = y.rational();
        return sign_plus_root(a.p() * b.den() - b.num() * a.r(), a.q() * b.den(), a.d());
    }
    const QuadraticIrrational& b = y.irrational();
    if (a.d() == b.d()) {
        return sign_plus_root(a.p() * b.r() - b.p() * a.r(), a.q() * b.r() - b.q() * a.r(), a.d());
    }
    return sign_two_roots(a.p() * b.r() - b.p() * a.r(), a.q() * b.r(), a.d(), -b.q() * a.r(), b.d());
}

inline double to_double(const BoundaryPoint& x) {
    if (x.is_infinity()) return std::numeric_limits<double>::infinity();
    if (x.is_rational()) return to_double(x.rational().num()) / to_double(x.rational().den());
    const QuadraticIrrational& a = x.irrational();
    return (to_double(a.p()) + to_double(a.q()) * std::sqrt(to_double(a.d()))) / to_double(a.r());
}

// Fixed-point decimal rendering with `digits` fractional digits (display
// only); two guard digits keep the last digit correctly rounded.
inline std::string decimal_string(const QuadraticIrrational& a, int digits) {
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int guard = scale * 100;
    Int radical = isqrt(a.q() * a.q() * a.d() * guard * guard);
    if (a.q() < 0) radical = -(radical + 1);
    Int numer = a.p() * guard + radical;         // value * guard, floored
    Int denom = a.r() * 100;                     // value * scale = numer / denom
    Int value = floor_div(2 * numer + denom, 2 * denom);  // round to nearest
    bool neg = value < 0;
    Int mag = abs(value);
    std::string body = to_string(mag / scale);
    std::string frac = to_string(mag % scale);
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = body + "." + frac;
    if (neg) out = "-" + out;
    return out;
}

}  // namespace farey_nielsen
