#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"

namespace farey_nielsen {

// Q(p,q) = a p^2 + b pq + c q^2.
struct BinaryQuadraticForm {
    Int a{0}, b{0}, c{0};

    BinaryQuadraticForm() = default;
    BinaryQuadraticForm(Int aa, Int bb, Int cc) : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)) {}

    Int eval(const Int& p, const Int& q) const { return a * p * p + b * p * q + c * q * q; }
    Int eval(const IntVector2& v) const { return eval(v.p, v.q); }

    Int discriminant() const { return b * b - 4 * a * c; }
    Int content() const { return gcd_of(gcd_of(a, b), c); }
    bool is_zero() const { return a == 0 && b == 0 && c == 0; }

    BinaryQuadraticForm operator-() const { return {-a, -b, -c}; }

    friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
};

// Q_A(v) = det(v, Av) as columns. For A = [[a,b],[c,d]] this expands to
// (c, d-a, -b), so Q_A(1,0) = c and disc(Q_A) = tr(A)^2 - 4 det(A).
inline BinaryQuadraticForm form_of_matrix(const IntMatrix2& m) {
    return {m.c, m.d - m.a, -m.b};
}

namespace detail {

inline IntVector2 canonical_vector_sign(IntVector2 v) {
    if (v.q < 0 || (v.q == 0 && v.p < 0)) return -v;
    return v;
}

// Solve a p^2 + b p + c = 0 over the integers.
inline std::vector<Int> integer_quadratic_roots(const Int& a, const Int& b, const Int& c) {
    std::vector<Int> roots;
    if (a == 0) {
        if (b == 0) return roots;  // constant; no isolated roots reported
        if (c % b == 0) roots.push_back(-c / b);
        return roots;
    }
    Int disc = b * b - 4 * a * c;
    Int s;
    if (!is_perfect_square(disc, &s)) return roots;
    for (int pm = 0; pm < (s == 0 ? 1 : 2); ++pm) {
        Int num = -b + (pm == 0 ? s : -s);
        if (num % (2 * a) == 0) roots.push_back(num / (2 * a));
    }
    return roots;
}

// Definite case: |Q| = 1 has finitely many solutions inside an ellipse.
inline std::optional<IntVector2> unit_definite(const BinaryQuadraticForm& f) {
    int sigma = sign_of(f.a);  // D < 0 forces a != 0 and sign(Q) = sign(a)
    Int absD = -f.discriminant();
    // 4a Q = (2ap + bq)^2 - D q^2, so |Q| = 1 needs q^2 <= 4|a| / |D|.
    Int qmax = isqrt(4 * abs(f.a) / absD) + 1;
    for (Int q = 0; q <= qmax; ++q) {
        for (const Int& p : integer_quadratic_roots(f.a, f.b * q, f.c * q * q - sigma)) {
            IntVector2 v{p, q};
            if (abs(f.eval(v)) == 1) return canonical_vector_sign(v);
        }
    }
    return std::nullopt;
}

// Degenerate case D = 0: a primitive form is +-(alpha p + gamma q)^2.
inline std::optional<IntVector2> unit_degenerate(const BinaryQuadraticForm& f) {
    if (f.a == 0) {
        // b = 0 since D = b^2; primitive then means |c| = 1.
        return abs(f.c) == 1 ? std::optional<IntVector2>(IntVector2{0, 1}) : std::nullopt;
    }
    Int alpha;
    if (!is_perfect_square(abs(f.a), &alpha)) throw InternalError("primitive degenerate form with non-square |a|");
    Int sigma = sign_of(f.a);
    Int gamma = f.b / (2 * sigma * alpha);
    // Solve alpha p + gamma q = 1 by the extended Euclidean algorithm.
    Int old_r = alpha, r = gamma, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int tmp = old_r - quot * r; old_r = r; r = tmp;
        tmp = old_s - quot * s; old_s = s; s = tmp;
        tmp = old_t - quot * t; old_t = t; t = tmp;
    }
    if (abs(old_r) != 1) return std::nullopt;  // gcd != 1 cannot happen for primitive f
    Int g = old_r;
    IntVector2 v{old_s / g, old_t / g};
    if (abs(f.eval(v)) != 1) throw InternalError("degenerate unit solver produced a non-unit");
    return canonical_vector_sign(v);
}

// Square discriminant: a Q = L1 L2 with integral linear forms, so solutions
// of |Q| = 1 come from divisor pairs of a.
inline std::optional<IntVector2> unit_square_disc(const BinaryQuadraticForm& f, const Int& sqrtD) {
    if (f.a == 0) {
        // Q = q (b p + c q); need q = +-1 and b p + c q = +-1.
        if (f.b == 0) return abs(f.c) == 1 ? std::optional<IntVector2>(IntVector2{0, 1}) : std::nullopt;
        for (int e : {1, -1}) {
            for (int t : {1, -1}) {
                Int num = Int(t) - f.c * e;
                if (num % f.b == 0) {
                    IntVector2 v{num / f.b, e};
                    if (abs(f.eval(v)) == 1) return canonical_vector_sign(v);
                }
            }
        }
        return std::nullopt;
    }
    // L1 = a p + (b+s)/2 q, L2 = a p + (b-s)/2 q; L1 L2 = a Q.
    Int h1 = (f.b + sqrtD) / 2, h2 = (f.b - sqrtD) / 2;
    Int target = abs(f.a);
    std::vector<Int> divisors;
    for (Int e = 1; e * e <= target; ++e) {
        if (target % e == 0) {
            divisors.push_back(e);
            if (e * e != target) divisors.push_back(target / e);
        }
    }
    Int det = -f.a * sqrtD;  // det of [[a,h1],[a,h2]]
    for (const Int& e0 : divisors) {
        for (int se : {1, -1}) {
            for (int st : {1, -1}) {
                Int e = se * e0;
                Int fq = (st * f.a) / e;  // L1 L2 = a Q = +- a
                if (e * fq != st * f.a) continue;
                Int np = e * h2 - fq * h1;
                Int nq = -f.a * e + f.a * fq;
                if (np % det != 0 || nq % det != 0) continue;
                IntVector2 v{np / det, nq / det};
                if (abs(f.eval(v)) == 1) return canonical_vector_sign(v);
            }
        }
    }
    return std::nullopt;
}

// One step of the Gauss reduction rho on an indefinite form with c != 0,
// together with the column transformation (form composes with [[0,-1],[1,s]]).
struct TransformedForm {
    BinaryQuadraticForm f;
    IntMatrix2 m;  // f = original composed with m
};

inline bool indefinite_reduced(const BinaryQuadraticForm& f, const Int& sq) {
    // 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b  (integer tests via floor sqrt sq)
    if (f.b <= 0) return false;
    Int absb = f.b, a2 = 2 * abs(f.a);
    // b < sqrt(D): b <= floor(sqrt(D)) and D non-square makes equality strict enough
    if (absb > sq) return false;
    // sqrt(D) - b < 2|a|  <=>  2|a| + b > sqrt(D)  <=>  2|a| + b >= sq + 1
    if (a2 + absb < sq + 1) return false;
    // 2|a| < sqrt(D) + b  <=>  2|a| - b <= sq  (strictness from non-square D)
    if (a2 - absb > sq) return false;
    return true;
}

inline TransformedForm rho_step(const TransformedForm& tf, const Int& D, const Int& sq) {
    const Int& b = tf.f.b;
    const Int& c = tf.f.c;
    if (c == 0) throw InternalError("rho step on a form with c = 0");
    Int twoc = 2 * abs(c);
    Int r0 = mod_floor(-b, twoc);
    Int r;
    if (abs(c) > sq) {
        // unique r = -b (mod 2c) in (-|c|, |c|]
        r = r0 > abs(c) ? r0 - twoc : r0;
    } else {
        // unique r = -b (mod 2c) in (sq - 2|c|, sq]
        r = sq - mod_floor(sq - r0, twoc);
    }
    Int s = (r + b) / (2 * c);
    BinaryQuadraticForm g{c, r, (r * r - D) / (4 * c)};
    IntMatrix2 n{0, -1, 1, s};
    return {g, tf.m * n};
}

// Walk the reduced cycle of f looking for leading coefficient +-1; returns the
// representing column when found.
inline std::optional<IntVector2> unit_via_cycle(const BinaryQuadraticForm& f0, const Int& D, const Int& sq) {
    TransformedForm tf{f0, IntMatrix2::identity()};
    int guard = 0;
    while (!indefinite_reduced(tf.f, sq)) {
        if (abs(tf.f.a) == 1) break;
        tf = rho_step(tf, D, sq);
        if (++guard > 100000) throw InternalError("indefinite reduction did not terminate");
    }
    if (abs(tf.f.a) == 1) return IntVector2{tf.m.a, tf.m.c};
    BinaryQuadraticForm first = tf.f;
    do {
        tf = rho_step(tf, D, sq);
        if (abs(tf.f.a) == 1) return IntVector2{tf.m.a, tf.m.c};
        if (++guard > 1000000) throw InternalError("reduced cycle walk did not close");
    } while (tf.f != first);
    return std::nullopt;
}

}  // namespace detail

// A primitive v with Q(v) = +-1, or nothing if no vector represents a unit.
// Any representation of +-1 by an integer vector is automatically primitive.
inline std::optional<IntVector2> represents_unit(const BinaryQuadraticForm& f) {
    if (f.is_zero()) return std::nullopt;
    if (abs(f.a) == 1) return IntVector2{1, 0};
    if (abs(f.c) == 1) return IntVector2{0, 1};
    if (f.content() != 1) return std::nullopt;

    Int D = f.discriminant();
    if (D < 0) return detail::unit_definite(f);
    if (D == 0) return detail::unit_degenerate(f);

    Int sq;
    if (is_perfect_square(D, &sq)) return detail::unit_square_disc(f, sq);

    sq = isqrt(D);
    for (const BinaryQuadraticForm& g : {f, -f}) {
        if (auto v = detail::unit_via_cycle(g, D, sq)) {
            if (abs(f.eval(*v)) != 1) throw InternalError("cycle solver produced a non-unit");
            return detail::canonical_vector_sign(*v);
        }
    }
    return std::nullopt;
}

// Solutions of |Q(u,w)| = 1 for a monic norm form Q = u^2 + t uw + d w^2,
// seen as the unit group of the lattice spanned by I and a matrix B with
// trace t and determinant d.
struct UnitGroupDescription {
    enum class Kind {
        Finite,           // definite or split: every unit is listed
        HyperbolicCyclic, // {+-F^k}: fundamental has the least dominant eigenvalue > 1
        ParabolicFamily,  // {+-P^k} with P unipotent
    };

    Kind kind;
    std::vector<IntVector2> torsion;          // all solutions in the finite case, {+-1} markers otherwise
    std::optional<IntVector2> fundamental;    // infinite-order generator when kind != Finite
};

// Multiplication of u1 I + w1 B and u2 I + w2 B via B^2 = t B - d I.
inline IntVector2 unit_mul(const IntVector2& x, const IntVector2& y, const Int& t, const Int& d) {
    return {x.p * y.p - d * x.q * y.q, x.p * y.q + x.q * y.p + t * x.q * y.q};
}

inline IntVector2 unit_inv(const IntVector2& x, const Int& t, const Int& d) {
    Int n = x.p * x.p + t * x.p * x.q + d * x.q * x.q;
    if (abs(n) != 1) throw InternalError("unit_inv of a non-unit");
    return {n * (x.p + t * x.q), -n * x.q};
}

namespace detail {

inline std::vector<IntVector2> all_units_finite(const Int& t, const Int& d, const Int& D) {
    std::vector<IntVector2> out;
    auto push_units_for_w = [&](const Int& w) {
        for (const Int& u : integer_quadratic_roots(Int(1), t * w, d * w * w - 1)) {
            out.push_back({u, w});
        }
        for (const Int& u : integer_quadratic_roots(Int(1), t * w, d * w * w + 1)) {
            out.push_back({u, w});
        }
    };
    Int wmax;
    if (D < 0) {
        wmax = isqrt(Int(4) / (-D)) + 1;  // (2u + tw)^2 - D w^2 = +-4 and N = 1 only
    } else {
        // split case D = s^2 > 0: (2u + tw - sw)(2u + tw + sw) = +-4,
        // so |s w| <= 4 bounds w.
        Int s = isqrt(D);
        wmax = Int(4) / s + 1;
    }
    for (Int w = -wmax; w <= wmax; ++w) push_units_for_w(w);
    return out;
}

}  // namespace detail

// w_bound: a witness bound for the Pell scan (the caller knows some unit with
// that second coordinate, so the fundamental one appears no later).
inline UnitGroupDescription form_unit_group(const BinaryQuadraticForm& q, const Int& w_bound) {
    if (q.is_zero()) throw Error(Errc::UnsupportedForm, "zero form has no unit group");
    if (q.a != 1) throw Error(Errc::UnsupportedForm, "expected a monic norm form");
    const Int& t = q.b;
    const Int& d = q.c;
    Int D = q.discriminant();

    UnitGroupDescription out;
    if (D == 0) {
        out.kind = UnitGroupDescription::Kind::ParabolicFamily;
        out.torsion = {{1, 0}, {-1, 0}};
        out.fundamental = IntVector2{1 - t / 2, 1};  // t is even when D = 0
        return out;
    }
    if (D < 0 || is_perfect_square(D)) {
        out.kind = UnitGroupDescription::Kind::Finite;
        out.torsion = detail::all_units_finite(t, d, D);
        return out;
    }

    // Pell scan: X^2 - D W^2 = +-4 with X = 2u + tW; the fundamental unit has
    // the smallest W > 0, and for a given W the smaller X (norm -4 first).
    for (Int w = 1; w <= w_bound; ++w) {
        Int base = D * w * w;
        Int x;
        if (!is_perfect_square(base - 4, &x) && !is_perfect_square(base + 4, &x)) continue;
        if ((x - t * w) % 2 != 0) throw InternalError("Pell parity violation");
        out.kind = UnitGroupDescription::Kind::HyperbolicCyclic;
        out.torsion = {{1, 0}, {-1, 0}};
        out.fundamental = IntVector2{(x - t * w) / 2, w};
        return out;
    }
    throw InternalError("Pell scan exhausted its witness bound");
}

}  // namespace farey_nielsen
