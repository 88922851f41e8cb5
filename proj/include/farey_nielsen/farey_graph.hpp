#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "farey_nielsen/boundary.hpp"
#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"

namespace farey_nielsen {

// Primitive pair up to sign; canonical representative has q > 0, or q = 0
// and p = 1 (the vertex at infinity).
class FareyVertex {
public:
    FareyVertex(Int p, Int q) {
        if (p == 0 && q == 0) throw Error(Errc::ZeroVector, "zero vector has no vertex");
        Int g = gcd_of(p, q);
        p /= g;
        q /= g;
        if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
        p_ = std::move(p);
        q_ = std::move(q);
    }
    explicit FareyVertex(const IntVector2& v) : FareyVertex(v.p, v.q) {}

    static FareyVertex infinity() { return FareyVertex(1, 0); }
    static FareyVertex from_integer(const Int& n) { return FareyVertex(n, 1); }

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    IntVector2 vec() const { return {p_, q_}; }
    bool is_infinity() const { return q_ == 0; }

    Rational boundary_value() const { return Rational(p_, q_); }
    Int height() const { return abs(p_) >= q_ ? abs(p_) : q_; }

    friend bool operator==(const FareyVertex&, const FareyVertex&) = default;
    // Container order only; orbit representatives use their own key.
    friend bool operator<(const FareyVertex& x, const FareyVertex& y) {
        return x.p_ != y.p_ ? x.p_ < y.p_ : x.q_ < y.q_;
    }

    std::string str() const { return boundary_value().str(); }

private:
    Int p_, q_;
};

inline FareyVertex vertex_from_vector(const IntVector2& v) { return FareyVertex(v); }

inline Int cross(const FareyVertex& u, const FareyVertex& v) {
    return u.p() * v.q() - u.q() * v.p();
}

inline bool adjacent(const FareyVertex& u, const FareyVertex& v) {
    return abs(cross(u, v)) == 1;
}

// Unordered edge; endpoints stored with the smaller boundary value first and
// infinity last.
class FareyEdge {
public:
    FareyEdge(FareyVertex x, FareyVertex y) : a_(std::move(x)), b_(std::move(y)) {
        if (!adjacent(a_, b_)) throw Error(Errc::NotAdjacent, a_.str() + " and " + b_.str() + " are not adjacent");
        if (qi_compare(BoundaryPoint(a_.boundary_value()), BoundaryPoint(b_.boundary_value())) > 0) std::swap(a_, b_);
    }

    const FareyVertex& first() const { return a_; }
    const FareyVertex& second() const { return b_; }

    bool incident(const FareyVertex& v) const { return a_ == v || b_ == v; }
    const FareyVertex& other(const FareyVertex& v) const {
        if (a_ == v) return b_;
        if (b_ == v) return a_;
        throw Error(Errc::NotAdjacent, "vertex not on edge");
    }

    friend bool operator==(const FareyEdge&, const FareyEdge&) = default;
    friend bool operator<(const FareyEdge& x, const FareyEdge& y) {
        if (!(x.a_ == y.a_)) return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    std::string str() const { return "{" + a_.str() + "," + b_.str() + "}"; }

private:
    FareyVertex a_, b_;
};

// Finite vertex path; consecutive vertices must be adjacent and immediate
// backtracks are rejected unless explicitly allowed (orbit windows of
// involutions need them).
class FareyPath {
public:
    explicit FareyPath(std::vector<FareyVertex> vertices, bool allow_backtrack = false)
        : vertices_(std::move(vertices)) {
        for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
            if (!adjacent(vertices_[i], vertices_[i + 1]))
                throw Error(Errc::NotAdjacent, "path vertices " + vertices_[i].str() + ", " + vertices_[i + 1].str());
        }
        if (!allow_backtrack) {
            for (std::size_t i = 0; i + 2 < vertices_.size(); ++i) {
                if (vertices_[i] == vertices_[i + 2])
                    throw Error(Errc::Backtrack, "immediate backtrack at " + vertices_[i + 1].str());
            }
        }
    }

    const std::vector<FareyVertex>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const FareyVertex& operator[](std::size_t i) const { return vertices_[i]; }

private:
    std::vector<FareyVertex> vertices_;
};

// The link of v is the bi-infinite family +-(w~ + k v) where w~ is the
// representative of a fixed neighbor w adjusted so that cross(v, w~) = +1.
// link_index returns the k of a neighbor u relative to that base.
inline Int link_index(const FareyVertex& v, const FareyVertex& w, const FareyVertex& u) {
    Int sw = cross(v, w);
    Int su = cross(v, u);
    if (abs(sw) != 1 || abs(su) != 1) throw Error(Errc::NotAdjacent, "link_index arguments must be neighbors of the center");
    IntVector2 wt = sw * w.vec();
    IntVector2 ut = su * u.vec();
    IntVector2 diff = ut - wt;
    Int k;
    if (v.p() != 0) {
        k = diff.p / v.p();
        if (k * v.p() != diff.p || k * v.q() != diff.q) throw InternalError("link solve failed");
    } else {
        k = diff.q / v.q();
        if (k * v.q() != diff.q || diff.p != 0) throw InternalError("link solve failed");
    }
    return k;
}

// Neighbor of v at link position k relative to base w.
inline FareyVertex link_neighbor(const FareyVertex& v, const FareyVertex& w, const Int& k) {
    Int sw = cross(v, w);
    if (abs(sw) != 1) throw Error(Errc::NotAdjacent, "link base must be a neighbor");
    return FareyVertex(sw * w.vec() + k * v.vec());
}

// Signed turn of the path (a, v, b) at v. The absolute value is one more
// than the number of link edges separating the two path edges; the sign
// convention is pinned by two anchors: at v = infinity the turn equals
// b - a as integers, and for [[0,e],[1,x]] the turn at 0 equals -e*x.
inline Int turning_number(const FareyVertex& a, const FareyVertex& v, const FareyVertex& b) {
    if (a == b) throw Error(Errc::DegenerateTurn, "turn with equal entry and exit");
    return link_index(v, a, b);  // base w = a makes the entry index 0
}

// True when exactly one of x, y lies in the open interval cut out by e.
inline bool edge_separates(const FareyEdge& e, const BoundaryPoint& x, const BoundaryPoint& y) {
    BoundaryPoint lo(e.first().boundary_value());
    BoundaryPoint hi(e.second().boundary_value());
    for (const BoundaryPoint* z : {&x, &y}) {
        if (*z == lo || *z == hi) throw Error(Errc::PointOnEdge, "separation test against an endpoint");
    }
    auto inside = [&](const BoundaryPoint& z) {
        if (hi.is_infinity()) return qi_compare(z, lo) > 0 && !z.is_infinity();
        return qi_compare(z, lo) > 0 && qi_compare(z, hi) < 0;
    };
    return inside(x) != inside(y);
}

inline bool shares_complementary_triangle(const FareyEdge& e1, const FareyEdge& e2) {
    if (e1 == e2) return false;
    for (const FareyVertex* v : {&e1.first(), &e1.second()}) {
        if (e2.incident(*v)) return adjacent(e1.other(*v), e2.other(*v));
    }
    return false;
}

namespace detail {

// A neighbor base for v with cross(v, base) = +1, from the extended
// Euclidean algorithm; deterministic.
inline FareyVertex some_neighbor(const FareyVertex& v) {
    Int old_r = v.p(), r = v.q(), old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int tmp = old_r - quot * r; old_r = r; r = tmp;
        tmp = old_s - quot * s; old_s = s; s = tmp;
        tmp = old_t - quot * t; old_t = t; t = tmp;
    }
    // old_s * p + old_t * q = old_r = +-1; build w with p*wq - q*wp = 1
    Int g = old_r;  // +-1
    IntVector2 w{-old_t * g, old_s * g};
    if (v.p() * w.q - v.q() * w.p != 1) throw InternalError("neighbor construction failed");
    return FareyVertex(w);
}

// The two link neighbors of x spanning the sector that contains t.
// Any geodesic from x toward t can be taken to start with one of them.
inline std::pair<FareyVertex, FareyVertex> sector_children(const FareyVertex& x, const FareyVertex& t) {
    FareyVertex base = some_neighbor(x);
    // the link line is base~ + k x with base~ = cross(x, base) * base, and
    // t sits at the real parameter k* = cross(t, base~)/cross(x, t)
    Int num = cross(x, base) * cross(t, base);
    Int den = cross(x, t);
    Int k = floor_div(num, den);
    return {link_neighbor(x, base, k), link_neighbor(x, base, k + 1)};
}

}  // namespace detail

// Exact graph distance via interval-pruned bidirectional breadth-first
// search: from each frontier vertex only the two link neighbors whose sector
// contains the remaining target are expanded.
inline long farey_distance(const FareyVertex& u, const FareyVertex& v, long budget) {
    if (budget < 0) throw Error(Errc::BudgetExceeded, "negative budget");
    if (u == v) return 0;
    if (adjacent(u, v)) {
        if (budget < 1) throw Error(Errc::BudgetExceeded, "distance exceeds budget");
        return 1;
    }

    std::map<FareyVertex, long> dist_u{{u, 0}}, dist_v{{v, 0}};
    std::vector<FareyVertex> front_u{u}, front_v{v};
    long depth_u = 0, depth_v = 0;
    long best = -1;

    auto expand = [&](std::vector<FareyVertex>& front, std::map<FareyVertex, long>& dist,
                      const std::map<FareyVertex, long>& other, const FareyVertex& target, long depth) {
        std::vector<FareyVertex> next;
        for (const FareyVertex& x : front) {
            if (x == target) continue;
            auto [c1, c2] = detail::sector_children(x, target);
            for (const FareyVertex& child : {c1, c2}) {
                if (dist.contains(child)) continue;
                dist.emplace(child, depth);
                auto it = other.find(child);
                if (it != other.end()) {
                    long total = depth + it->second;
                    if (best < 0 || total < best) best = total;
                }
                next.push_back(child);
            }
        }
        front = std::move(next);
    };

    // A side that has searched to depth >= best proves best optimal: had a
    // shorter path existed, that side's pruned search would already have
    // reached the opposite endpoint along it.
    while (true) {
        if (best >= 0 && (depth_u >= best || depth_v >= best)) break;
        bool can_u = !front_u.empty() && depth_u < budget;
        bool can_v = !front_v.empty() && depth_v < budget;
        if (!can_u && !can_v) break;
        if (can_u && (!can_v || front_u.size() <= front_v.size())) {
            ++depth_u;
            expand(front_u, dist_u, dist_v, v, depth_u);
        } else {
            ++depth_v;
            expand(front_v, dist_v, dist_u, u, depth_v);
        }
    }
    if (best < 0 || best > budget) throw Error(Errc::BudgetExceeded, "distance exceeds budget");
    return best;
}

// The edges m_i (and n_i, o_i when the turn allows) incident to the interior
// vertex path[i]: neighbors strictly between the entry and exit edges, taken
// from the exit side inward. m_i shares a complementary triangle with the
// exit edge.
inline std::vector<FareyEdge> separating_edges(const FareyPath& path, std::size_t i) {
    if (i == 0 || i + 1 >= path.size()) throw Error(Errc::TurningTooSmall, "separating edges need an interior vertex");
    const FareyVertex& prev = path[i - 1];
    const FareyVertex& v = path[i];
    const FareyVertex& next = path[i + 1];
    Int turn = turning_number(prev, v, next);
    if (abs(turn) < 3) throw Error(Errc::TurningTooSmall, "|turning| < 3 leaves no protected edges");
    int step = turn > 0 ? 1 : -1;
    std::size_t count = abs(turn) >= 4 ? 3 : 1;
    std::vector<FareyEdge> out;
    for (std::size_t j = 1; j <= count; ++j) {
        out.emplace_back(v, link_neighbor(v, prev, turn - step * Int(j)));
    }
    return out;
}

enum class GeodesicVerdict { Inconclusive, Geodesic, UniqueGeodesic };

// Sufficient criteria: every interior |turn| >= 3 gives a geodesic, >= 4 the
// unique geodesic between the endpoints.
inline GeodesicVerdict is_geodesic_by_turning(const FareyPath& path) {
    if (path.size() < 3) throw Error(Errc::Parse, "turning criterion needs at least 3 vertices");
    Int min_abs = -1;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        Int t = abs(turning_number(path[i - 1], path[i], path[i + 1]));
        if (min_abs < 0 || t < min_abs) min_abs = t;
    }
    if (min_abs >= 4) return GeodesicVerdict::UniqueGeodesic;
    if (min_abs >= 3) return GeodesicVerdict::Geodesic;
    return GeodesicVerdict::Inconclusive;
}

}  // namespace farey_nielsen
