#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/farey_graph.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"
#include "farey_nielsen/matrix_actions.hpp"
#include "farey_nielsen/quadratic_form.hpp"

namespace farey_nielsen {

// An <A>-orbit in the Farey graph all of whose points move distance 1,
// presented as a finite window of consecutive vertices.
struct OneOrbit {
    FareyVertex representative;
    std::vector<FareyVertex> window;     // one full period when finite
    std::vector<Int> turning_signature;  // turns at interior (or cyclic) positions
    bool finite = false;
    long period = 0;

    explicit OneOrbit(FareyVertex rep) : representative(std::move(rep)) {}
};

inline bool in_sa(const IntMatrix2& m, const FareyVertex& v) {
    return abs(form_of_matrix(m).eval(v.vec())) == 1;
}

// All vertices of height <= bound moved distance 1 by A, by direct box
// enumeration. This is the oracle path: no cleverness.
inline std::vector<FareyVertex> s_a_members(const IntMatrix2& m, long height_bound) {
    require_unimodular(m);
    BinaryQuadraticForm q = form_of_matrix(m);
    std::vector<FareyVertex> out;
    if (height_bound >= 1 && abs(q.a) == 1) out.push_back(FareyVertex::infinity());  // (1, 0)
    for (Int den = 1; den <= height_bound; ++den) {
        for (Int num = -height_bound; num <= height_bound; ++num) {
            if (gcd_of(num, den) != 1) continue;
            if (abs(q.eval(num, den)) == 1) out.push_back(FareyVertex(num, den));
        }
    }
    std::sort(out.begin(), out.end(), [](const FareyVertex& x, const FareyVertex& y) {
        if (x.q() != y.q()) return x.q() < y.q();
        return x.p() < y.p();
    });
    return out;
}

namespace detail {

struct ParabolicShape {
    Int sigma;       // A = sigma (I + N)
    IntMatrix2 nil;  // N, with N^2 = 0
};

inline ParabolicShape parabolic_shape(const IntMatrix2& m) {
    Int sigma = m.trace() > 0 ? 1 : -1;
    IntMatrix2 nil = sigma == 1 ? m : -m;
    nil.a -= 1;
    nil.d -= 1;
    if (!((nil * nil) == IntMatrix2{0, 0, 0, 0})) throw InternalError("parabolic part is not nilpotent");
    return {sigma, nil};
}

// Walk A^k u for k = 1, 2, ... (or backwards) applying `visit` to each
// canonical vertex. Stops once vertex heights in both parity classes are
// nondecreasing and above `height_cap`: by Cayley-Hamilton the heights of a
// hyperbolic orbit grow monotonically from then on, so no later vertex can
// return below the cap. Returns false if `visit` never returned true.
inline bool hyperbolic_scan(const IntMatrix2& step, const IntVector2& start, const Int& height_cap,
                            const auto& visit) {
    IntVector2 prev2 = start;                 // A^{k-2} u
    IntVector2 prev1 = step * start;          // A^{k-1} u
    if (visit(FareyVertex(prev1))) return true;
    for (int k = 2;; ++k) {
        IntVector2 cur = step * prev1;
        if (visit(FareyVertex(cur))) return true;
        Int h_cur = height(cur), h_prev2 = height(prev2), h_prev1 = height(prev1);
        // parity classes {k, k-2} and {k-1, k-3}: the latter turned already
        // when h(k-1) >= h(k-3); track with a window of three heights.
        if (k >= 3 && h_cur >= h_prev2 && h_cur > height_cap && h_prev1 > height_cap) {
            // previous parity class also nondecreasing?
            IntVector2 prev3 = mat_inv(step) * prev2;
            if (h_prev1 >= height(prev3)) return false;
        }
        if (k > 100000) throw InternalError("hyperbolic orbit scan did not terminate");
        prev2 = prev1;
        prev1 = cur;
    }
}

}  // namespace detail

// Whether v = +-A^k u for some integer k. Exact and total: elliptic and
// parabolic cases are solved directly, hyperbolic ones by a height-bounded
// scan in both directions.
inline bool same_one_orbit(const IntMatrix2& m, const FareyVertex& u, const FareyVertex& v) {
    require_unimodular(m);
    if (!in_sa(m, u) || !in_sa(m, v)) throw Error(Errc::NotInSA, "orbit test outside S_A");
    if (u == v) return true;

    MatrixClassification cls = classify_matrix(m);
    switch (cls.type) {
        case IsometryType::Central:
            return false;  // u != v already checked
        case IsometryType::Elliptic: {
            IntVector2 w = u.vec();
            for (int k = 1; k <= 6; ++k) {
                w = m * w;
                if (FareyVertex(w) == v) return true;
            }
            return false;
        }
        case IsometryType::Parabolic: {
            auto [sigma, nil] = detail::parabolic_shape(m);
            // +-A^k u = +-(u + k N u); solve componentwise.
            IntVector2 nu = nil * u.vec();
            for (int s : {1, -1}) {
                IntVector2 target = s * v.vec();
                if (nu.is_zero()) {
                    if (target == u.vec()) return true;
                    continue;
                }
                IntVector2 diff = target - u.vec();
                const Int& lead = nu.p != 0 ? nu.p : nu.q;
                const Int& dlead = nu.p != 0 ? diff.p : diff.q;
                if (dlead % lead != 0) continue;
                Int k = dlead / lead;
                if (u.vec() + k * nu == target) return true;
            }
            return false;
        }
        case IsometryType::Hyperbolic: {
            Int cap = v.height();
            auto hit = [&](const FareyVertex& w) { return w == v; };
            if (detail::hyperbolic_scan(m, u.vec(), cap, hit)) return true;
            return detail::hyperbolic_scan(mat_inv(m), u.vec(), cap, hit);
        }
    }
    return false;
}

// Window of the orbit of v under A. Finite orbits (elliptic and the
// involution-like standard forms) are detected by first repetition.
inline OneOrbit one_orbit_of(const IntMatrix2& m, const FareyVertex& v, long half_width) {
    require_unimodular(m);
    if (!in_sa(m, v)) throw Error(Errc::NotInSA, v.str() + " is not moved distance 1");

    OneOrbit orbit(v);

    // forward walk with repetition detection (finite orbits have period <= 3)
    std::vector<FareyVertex> forward{v};
    for (long k = 1; k <= std::max(8L, 2 * half_width + 2); ++k) {
        FareyVertex next(m * forward.back().vec());
        if (next == v) {
            orbit.finite = true;
            orbit.period = k;
            break;
        }
        forward.push_back(next);
    }

    if (orbit.finite) {
        orbit.window = std::move(forward);
        if (orbit.period >= 3) {
            long n = orbit.period;
            for (long i = 0; i < n; ++i) {
                orbit.turning_signature.push_back(turning_number(
                    orbit.window[(i + n - 1) % n], orbit.window[i], orbit.window[(i + 1) % n]));
            }
        }
        return orbit;
    }

    IntMatrix2 inv = mat_inv(m);
    std::vector<FareyVertex> window;
    IntVector2 back = v.vec();
    for (long k = 0; k < half_width; ++k) back = inv * back;
    FareyVertex cursor(back);
    window.push_back(cursor);
    for (long k = 1; k <= 2 * half_width; ++k) {
        back = m * back;
        window.push_back(FareyVertex(back));
    }
    orbit.window = std::move(window);
    for (std::size_t i = 1; i + 1 < orbit.window.size(); ++i) {
        orbit.turning_signature.push_back(
            turning_number(orbit.window[i - 1], orbit.window[i], orbit.window[i + 1]));
    }
    return orbit;
}

// Closed form of the orbit count: two orbits exactly in the trace-3,
// determinant-1 conjugacy class (the +-[[2,1],[1,1]] class); one otherwise.
inline int count_one_orbits(const IntMatrix2& m) {
    require_unimodular(m);
    if (!standard_form(m)) throw Error(Errc::NotTwoGenerated, "no vertex moves distance 1");
    return (m.det() == 1 && abs(m.trace()) == 3) ? 2 : 1;
}

namespace detail {

struct RepKey {
    Int h, q, p;
    friend bool operator<(const RepKey& x, const RepKey& y) {
        if (x.h != y.h) return x.h < y.h;
        if (x.q != y.q) return x.q < y.q;
        return x.p < y.p;
    }
};

inline RepKey rep_key(const FareyVertex& v) { return {v.height(), v.q(), v.p()}; }

// The minimal vertex on the orbit of r, by (height, denominator, numerator).
inline FareyVertex orbit_minimum(const IntMatrix2& m, const FareyVertex& r) {
    MatrixClassification cls = classify_matrix(m);
    FareyVertex best = r;
    auto consider = [&](const FareyVertex& w) {
        if (rep_key(w) < rep_key(best)) best = w;
        return false;  // never stop early
    };
    switch (cls.type) {
        case IsometryType::Central:
            return r;
        case IsometryType::Elliptic: {
            IntVector2 w = r.vec();
            for (int k = 1; k <= 6; ++k) {
                w = m * w;
                consider(FareyVertex(w));
            }
            return best;
        }
        case IsometryType::Parabolic: {
            // heights are convex piecewise-linear in k; scan the bounded dip
            auto [sigma, nil] = parabolic_shape(m);
            IntVector2 nr = nil * r.vec();
            if (nr.is_zero()) return r;
            Int reach = r.height() + 2;
            for (Int k = -reach; k <= reach; ++k) consider(FareyVertex(r.vec() + k * nr));
            return best;
        }
        case IsometryType::Hyperbolic: {
            hyperbolic_scan(m, r.vec(), r.height(), consider);
            hyperbolic_scan(mat_inv(m), r.vec(), r.height(), consider);
            return best;
        }
    }
    return best;
}

}  // namespace detail

// Orbit representatives, one per class: the standard-form picture has
// representatives infinity (always) and -1 or +1 (trace +-3, det 1 only),
// pulled back through the conjugator and normalized to the orbit minimum.
inline std::vector<FareyVertex> one_orbit_representatives(const IntMatrix2& m) {
    require_unimodular(m);
    auto sf = standard_form(m);
    if (!sf) throw Error(Errc::NotTwoGenerated, "no vertex moves distance 1");
    IntMatrix2 pull = mat_inv(sf->conjugator);

    std::vector<IntVector2> std_reps{{1, 0}};
    if (sf->epsilon == -1 && sf->x == 3) std_reps.push_back({-1, 1});
    if (sf->epsilon == -1 && sf->x == -3) std_reps.push_back({1, 1});

    std::vector<FareyVertex> out;
    for (const IntVector2& r : std_reps) {
        out.push_back(detail::orbit_minimum(m, FareyVertex(pull * r)));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (same_one_orbit(m, out[i], out[j])) throw InternalError("orbit representatives collide");
        }
    }
    return out;
}

// The commutant of A in the 2x2 integer matrices: the saturation of Z[A],
// spanned by I and B = (A + p I)/g with g = gcd(b, c, d - a).
struct CommutantLattice {
    IntMatrix2 second_basis;     // B
    Int shift;                   // p with B = (A + p I)/g
    Int index;                   // g = [commutant : Z[A]]
    BinaryQuadraticForm norm;    // det(u I + w B) = u^2 + tr(B) uw + det(B) w^2
    IntVector2 a_coordinates;    // A = -shift I + index B
};

inline CommutantLattice commutant_lattice(const IntMatrix2& m) {
    if (m.b == 0 && m.c == 0 && m.a == m.d) throw Error(Errc::CentralInput, "central matrices commute with everything");
    Int g = gcd_of(gcd_of(m.b, m.c), m.d - m.a);
    Int p = mod_floor(-m.a, g);
    IntMatrix2 shifted{m.a + p, m.b, m.c, m.d + p};
    IntMatrix2 basis{shifted.a / g, shifted.b / g, shifted.c / g, shifted.d / g};
    if (!(IntMatrix2{basis.a * g, basis.b * g, basis.c * g, basis.d * g} == shifted))
        throw InternalError("commutant basis is not integral");
    CommutantLattice out;
    out.second_basis = basis;
    out.shift = p;
    out.index = g;
    out.norm = BinaryQuadraticForm{1, basis.trace(), basis.det()};
    out.a_coordinates = {-p, g};
    return out;
}

namespace detail {

// Order of the subgroup generated by the given units inside a finite unit
// group of size `total`.
inline long finite_subgroup_order(const std::vector<IntVector2>& gens, const Int& t, const Int& d) {
    std::set<std::pair<Int, Int>> seen;
    std::vector<IntVector2> frontier{{1, 0}};
    seen.insert({1, 0});
    while (!frontier.empty()) {
        std::vector<IntVector2> next;
        for (const IntVector2& x : frontier) {
            for (const IntVector2& gcur : gens) {
                IntVector2 y = unit_mul(x, gcur, t, d);
                if (seen.insert({y.p, y.q}).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return static_cast<long>(seen.size());
}

}  // namespace detail

// Index of <A, -I> in the GL_2(Z)-centralizer of A: solve |det(uI + wB)| = 1
// over the commutant lattice and locate A inside the unit group.
inline long centralizer_index(const IntMatrix2& m) {
    require_unimodular(m);
    if (m.is_plus_minus_identity()) throw Error(Errc::CentralInput, "centralizer index needs a non-central matrix");
    if (!standard_form(m)) throw Error(Errc::NotTwoGenerated, "centralizer index is stated for 2-generated bundles");

    CommutantLattice lat = commutant_lattice(m);
    const Int& t = lat.norm.b;
    const Int& d = lat.norm.c;
    UnitGroupDescription units = form_unit_group(lat.norm, lat.index);
    IntVector2 target = lat.a_coordinates;
    IntVector2 minus_i{-1, 0};

    switch (units.kind) {
        case UnitGroupDescription::Kind::Finite: {
            long total = static_cast<long>(units.torsion.size());
            long sub = detail::finite_subgroup_order({target, minus_i}, t, d);
            if (total % sub != 0) throw InternalError("subgroup order does not divide unit group order");
            return total / sub;
        }
        case UnitGroupDescription::Kind::ParabolicFamily:
        case UnitGroupDescription::Kind::HyperbolicCyclic: {
            IntVector2 fnd = *units.fundamental;
            IntVector2 fwd{1, 0}, bwd{1, 0};
            IntVector2 inv = unit_inv(fnd, t, d);
            for (long k = 1; k <= 100000; ++k) {
                fwd = unit_mul(fwd, fnd, t, d);
                bwd = unit_mul(bwd, inv, t, d);
                for (const IntVector2* cand : {&fwd, &bwd}) {
                    if (*cand == target || -*cand == target) return k;
                }
                if (abs(fwd.q) > abs(target.q) && abs(bwd.q) > abs(target.q))
                    throw InternalError("matrix is not a power of the fundamental unit");
            }
            throw InternalError("fundamental unit power search did not terminate");
        }
    }
    throw InternalError("unreachable unit group kind");
}

}  // namespace farey_nielsen
