#pragma once

#include <optional>
#include <utility>

#include "farey_nielsen/boundary.hpp"
#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/farey_graph.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"
#include "farey_nielsen/quadratic_form.hpp"

namespace farey_nielsen {

enum class IsometryType { Central, Elliptic, Parabolic, Hyperbolic };
enum class Orientation { Preserving, Reversing };

inline const char* isometry_name(IsometryType t) {
    switch (t) {
        case IsometryType::Central:    return "central";
        case IsometryType::Elliptic:   return "elliptic";
        case IsometryType::Parabolic:  return "parabolic";
        case IsometryType::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

struct MatrixClassification {
    Int det;
    Int trace;
    IsometryType type;
    int elliptic_order = 0;  // least k with A^k = +-I, when elliptic
    Orientation orientation;
};

inline void require_unimodular(const IntMatrix2& m) {
    if (!m.unimodular()) throw Error(Errc::NonUnimodular, "matrix must have det = +-1");
}

inline MatrixClassification classify_matrix(const IntMatrix2& m) {
    require_unimodular(m);
    MatrixClassification out;
    out.det = m.det();
    out.trace = m.trace();
    out.orientation = out.det == 1 ? Orientation::Preserving : Orientation::Reversing;
    Int at = abs(out.trace);
    if (out.det == 1) {
        if (m.is_plus_minus_identity()) out.type = IsometryType::Central;
        else if (at < 2) out.type = IsometryType::Elliptic;
        else if (at == 2) out.type = IsometryType::Parabolic;
        else out.type = IsometryType::Hyperbolic;
    } else {
        out.type = out.trace == 0 ? IsometryType::Elliptic : IsometryType::Hyperbolic;
    }
    if (out.type == IsometryType::Elliptic) {
        IntMatrix2 pw = m;
        for (int k = 1; k <= 6; ++k) {
            if (pw.is_plus_minus_identity()) { out.elliptic_order = k; break; }
            pw = pw * m;
        }
        if (out.elliptic_order == 0) throw InternalError("elliptic element of order > 6");
    }
    return out;
}

// P A P^-1 = [[0, epsilon],[1, x]] with epsilon = -det A and x = tr A.
// Exists exactly when some v has <v, Av> = Z^2; then P^-1 has columns (v, Av).
struct StandardForm {
    int epsilon;
    Int x;
    IntMatrix2 conjugator;

    IntMatrix2 matrix() const { return {0, Int(epsilon), 1, x}; }
};

inline std::optional<StandardForm> standard_form(const IntMatrix2& m) {
    require_unimodular(m);
    auto v = represents_unit(form_of_matrix(m));
    if (!v) return std::nullopt;
    IntVector2 av = m * *v;
    IntMatrix2 basis{v->p, av.p, v->q, av.q};
    StandardForm out;
    out.epsilon = static_cast<int>(-m.det());
    out.x = m.trace();
    out.conjugator = mat_inv(basis);
    if (!(out.conjugator * m * basis == out.matrix())) throw InternalError("standard form conjugation failed");
    return out;
}

// PGL_2(Z) conjugacy of standard forms: equal epsilon and equal |x|.
inline bool standard_forms_conjugate(const StandardForm& s1, const StandardForm& s2) {
    return s1.epsilon == s2.epsilon && abs(s1.x) == abs(s2.x);
}

// Fractional-linear action on the boundary circle.
inline BoundaryPoint moebius_apply(const IntMatrix2& m, const BoundaryPoint& x) {
    require_unimodular(m);
    if (x.is_rational()) {
        const Rational& r = x.rational();
        IntVector2 image = m * IntVector2{r.num(), r.den()};
        return BoundaryPoint(Rational(image.p, image.q));
    }
    const QuadraticIrrational& z = x.irrational();
    // (a z + b) / (c z + d) rationalized in Q(sqrt(D))
    Int np = m.a * z.p() + m.b * z.r();
    Int dq = m.c * z.p() + m.d * z.r();
    Int denom = dq * dq - m.c * m.c * z.q() * z.q() * z.d();
    if (denom == 0) throw InternalError("irrational boundary point mapped through a pole");
    Int rp = np * dq - m.a * m.c * z.q() * z.q() * z.d();
    Int rq = z.q() * z.r() * m.det();
    return BoundaryPoint::make(rp, rq, denom, z.d());
}

// (lambda_minus, lambda_plus): repelling and attracting fixed points of a
// hyperbolic matrix, as exact elements of the boundary.
inline std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const IntMatrix2& m) {
    if (classify_matrix(m).type != IsometryType::Hyperbolic)
        throw Error(Errc::NotHyperbolic, "fixed points require a hyperbolic matrix");
    // c z^2 + (d - a) z - b = 0; hyperbolic unimodular matrices have c != 0
    // and a non-square positive discriminant.
    if (m.c == 0) throw InternalError("hyperbolic matrix with c = 0");
    Int disc = (m.d - m.a) * (m.d - m.a) + 4 * m.b * m.c;  // = tr^2 - 4 det
    auto root = [&](int s) { return BoundaryPoint::make(m.a - m.d, Int(s), 2 * m.c, disc); };
    BoundaryPoint z1 = root(1), z2 = root(-1);

    // The attracting fixed point carries the eigenvalue of larger absolute
    // value: |c z + d| > 1 there. Exact test on (c z + d)^2 - 1.
    auto attracts = [&](const BoundaryPoint& z) {
        const QuadraticIrrational& w = z.irrational();
        Int e = m.c * w.p() + m.d * w.r();
        Int a0 = e * e + m.c * m.c * w.q() * w.q() * w.d() - w.r() * w.r();
        Int b1 = 2 * e * m.c * w.q();
        return sign_plus_root(a0, b1, w.d()) > 0;
    };
    bool first_attracts = attracts(z1);
    if (first_attracts == attracts(z2)) throw InternalError("fixed point attraction test inconsistent");
    if (first_attracts) return {z2, z1};
    return {z1, z2};
}

}  // namespace farey_nielsen
