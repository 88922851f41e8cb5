#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "farey_nielsen/errors.hpp"
#include "farey_nielsen/farey_graph.hpp"
#include "farey_nielsen/integer.hpp"
#include "farey_nielsen/linear.hpp"
#include "farey_nielsen/orbits.hpp"
#include "farey_nielsen/quadratic_form.hpp"

namespace farey_nielsen {

// Element (v, n) of Z^2 x| Z with multiplication
// (v, n) (w, m) = (v + A^n w, n + m); conjugating (u, 0) by (0, 1) gives (Au, 0).
struct GroupElement {
    IntVector2 vec;
    Int exp{0};

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct GeneratingPair {
    GroupElement first, second;

    friend bool operator==(const GeneratingPair&, const GeneratingPair&) = default;
};

struct NielsenMove {
    enum class Kind { RightMultiply, Swap, Invert };
    Kind kind;
    int target = 0;  // 1 or 2 for RightMultiply / Invert

    static NielsenMove right_multiply(int t) { return {Kind::RightMultiply, t}; }
    static NielsenMove swap() { return {Kind::Swap, 0}; }
    static NielsenMove invert(int t) { return {Kind::Invert, t}; }

    friend bool operator==(const NielsenMove&, const NielsenMove&) = default;

    std::string str() const {
        switch (kind) {
            case Kind::RightMultiply: return "rm" + std::to_string(target);
            case Kind::Swap:          return "swap";
            case Kind::Invert:        return "inv" + std::to_string(target);
        }
        return "?";
    }
};

inline GroupElement g_identity() { return {{0, 0}, 0}; }

inline GroupElement g_mul(const IntMatrix2& a, const GroupElement& g, const GroupElement& h) {
    return {g.vec + mat_pow(a, g.exp) * h.vec, g.exp + h.exp};
}

inline GroupElement g_inv(const IntMatrix2& a, const GroupElement& g) {
    return {-(mat_pow(a, -g.exp) * g.vec), -g.exp};
}

inline GeneratingPair apply_move(const IntMatrix2& a, const GeneratingPair& p, const NielsenMove& m) {
    switch (m.kind) {
        case NielsenMove::Kind::Swap:
            return {p.second, p.first};
        case NielsenMove::Kind::Invert:
            return m.target == 1 ? GeneratingPair{g_inv(a, p.first), p.second}
                                 : GeneratingPair{p.first, g_inv(a, p.second)};
        case NielsenMove::Kind::RightMultiply:
            return m.target == 1 ? GeneratingPair{g_mul(a, p.first, p.second), p.second}
                                 : GeneratingPair{p.first, g_mul(a, p.second, p.first)};
    }
    throw InternalError("unknown move kind");
}

inline GeneratingPair apply_moves(const IntMatrix2& a, GeneratingPair p, const std::vector<NielsenMove>& moves) {
    for (const NielsenMove& m : moves) p = apply_move(a, p, m);
    return p;
}

namespace detail {

// Euclidean reduction of the exponents to the shape ((u,0), (w,1)) using
// only the three moves; every step lands in the certificate.
inline GeneratingPair euclid_reduce(const IntMatrix2& a, GeneratingPair p, std::vector<NielsenMove>* cert) {
    long moves_done = 0;
    auto do_move = [&](const NielsenMove& m) {
        if (++moves_done > 2000000)
            throw Error(Errc::BudgetExceeded, "exponent reduction certificate exceeds the move budget");
        p = apply_move(a, p, m);
        if (cert) cert->push_back(m);
    };
    int guard = 0;
    while (true) {
        if (++guard > 100000) throw InternalError("exponent reduction did not terminate");
        const Int n1 = p.first.exp, n2 = p.second.exp;
        if (n1 == 0 && n2 == 1) break;
        if (n1 == 0 && n2 == -1) { do_move(NielsenMove::invert(2)); continue; }
        if (n2 == 0) { do_move(NielsenMove::swap()); continue; }
        Int q = n1 / n2;  // truncated: |n1 - q n2| < |n2|
        if (q == 0) { do_move(NielsenMove::swap()); continue; }
        // first <- first * second^(-q), via moves (1) and (3) only
        bool negate = q > 0;
        if (negate) do_move(NielsenMove::invert(2));
        for (Int i = 0; i < abs(q); ++i) do_move(NielsenMove::right_multiply(1));
        if (negate) do_move(NielsenMove::invert(2));
    }
    return p;
}

}  // namespace detail

// A pair generates iff its exponents generate Z and, after reducing the
// exponents to (0, 1), the fiber vector u of the first generator satisfies
// <u, Au> = Z^2 (the fiber subgroup it spans is <A^k u> by Cayley-Hamilton).
inline bool is_generating_pair(const IntMatrix2& a, const GeneratingPair& p) {
    require_unimodular(a);
    if (gcd_of(p.first.exp, p.second.exp) != 1) return false;
    GeneratingPair r = detail::euclid_reduce(a, p, nullptr);
    if (r.first.vec.is_zero()) return false;
    return abs(form_of_matrix(a).eval(r.first.vec)) == 1;
}

// The vertex class of the reduced fiber generator plus the move certificate;
// replaying the certificate on p reproduces the reduced pair.
inline std::pair<FareyVertex, std::vector<NielsenMove>> reduce_pair(const IntMatrix2& a, const GeneratingPair& p) {
    if (!is_generating_pair(a, p)) throw Error(Errc::NotGenerating, "pair does not generate");
    std::vector<NielsenMove> cert;
    GeneratingPair r = detail::euclid_reduce(a, p, &cert);
    return {FareyVertex(r.first.vec), std::move(cert)};
}

inline int nielsen_class_count(const IntMatrix2& a) {
    return count_one_orbits(a);  // NotTwoGenerated propagates
}

// Index into one_orbit_representatives(a) of the class of p.
inline std::size_t nielsen_class_of(const IntMatrix2& a, const GeneratingPair& p) {
    auto [u, cert] = reduce_pair(a, p);
    std::vector<FareyVertex> reps = one_orbit_representatives(a);
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (same_one_orbit(a, u, reps[i])) {
            if (found) throw InternalError("pair matched two orbit representatives");
            found = i;
        }
    }
    if (!found) throw InternalError("pair matched no orbit representative");
    return *found;
}

namespace detail {

inline std::string pair_key(const GeneratingPair& p) {
    return to_string(p.first.vec.p) + "," + to_string(p.first.vec.q) + "," + to_string(p.first.exp) + ";" +
           to_string(p.second.vec.p) + "," + to_string(p.second.vec.q) + "," + to_string(p.second.exp);
}

inline Int pair_norm(const GeneratingPair& p) {
    Int n = height(p.first.vec);
    if (height(p.second.vec) > n) n = height(p.second.vec);
    if (abs(p.first.exp) > n) n = abs(p.first.exp);
    if (abs(p.second.exp) > n) n = abs(p.second.exp);
    return n;
}

inline const std::vector<NielsenMove>& all_moves() {
    static const std::vector<NielsenMove> moves = {
        NielsenMove::right_multiply(1), NielsenMove::right_multiply(2),
        NielsenMove::swap(), NielsenMove::invert(1), NielsenMove::invert(2)};
    return moves;
}

// Inverse of an atomic move as a composition of atomic moves.
inline std::vector<NielsenMove> inverse_moves(const NielsenMove& m) {
    switch (m.kind) {
        case NielsenMove::Kind::Swap:
        case NielsenMove::Kind::Invert:
            return {m};
        case NielsenMove::Kind::RightMultiply: {
            int other = m.target == 1 ? 2 : 1;
            return {NielsenMove::invert(other), m, NielsenMove::invert(other)};
        }
    }
    throw InternalError("unknown move kind");
}

struct SearchNode {
    GeneratingPair pair;
    std::string parent;
    NielsenMove move{NielsenMove::swap()};
    long depth = 0;
};

}  // namespace detail

// Bidirectional breadth-first search through the Nielsen move graph.
// Found(certificate) is replay-verified; Exhausted proves nothing.
inline std::optional<std::vector<NielsenMove>> nielsen_bfs_search(const IntMatrix2& a, const GeneratingPair& p,
                                                                  const GeneratingPair& q, long depth,
                                                                  const Int& norm_bound) {
    if (!is_generating_pair(a, p) || !is_generating_pair(a, q))
        throw Error(Errc::NotGenerating, "search endpoints must generate");

    // forward nodes store the move from the parent; backward nodes store the
    // forward move that leads from the node to its parent (the backward tree
    // is expanded along predecessors, one forward move per edge)
    auto finish = [&](const std::map<std::string, detail::SearchNode>& fwd,
                      const std::map<std::string, detail::SearchNode>& bwd, const std::string& meet) {
        std::vector<NielsenMove> cert;
        std::string key = meet;
        while (true) {
            const detail::SearchNode& n = fwd.at(key);
            if (n.parent.empty()) break;
            cert.push_back(n.move);
            key = n.parent;
        }
        std::reverse(cert.begin(), cert.end());
        key = meet;
        while (true) {
            const detail::SearchNode& n = bwd.at(key);
            if (n.parent.empty()) break;
            cert.push_back(n.move);
            key = n.parent;
        }
        if (!(apply_moves(a, p, cert) == q)) throw InternalError("search certificate failed to replay");
        return cert;
    };

    std::map<std::string, detail::SearchNode> fwd, bwd;
    std::string pk = detail::pair_key(p), qk = detail::pair_key(q);
    fwd[pk] = {p, "", NielsenMove::swap(), 0};
    bwd[qk] = {q, "", NielsenMove::swap(), 0};
    if (pk == qk) return std::vector<NielsenMove>{};

    std::deque<std::string> front_f{pk}, front_b{qk};
    long depth_f = 0, depth_b = 0;

    while ((!front_f.empty() || !front_b.empty()) && depth_f + depth_b < depth) {
        bool forward_turn = !front_f.empty() && (front_b.empty() || front_f.size() <= front_b.size());
        auto& nodes = forward_turn ? fwd : bwd;
        auto& other = forward_turn ? bwd : fwd;
        auto& front = forward_turn ? front_f : front_b;
        long next_depth = (forward_turn ? depth_f : depth_b) + 1;

        std::deque<std::string> next;
        for (const std::string& key : front) {
            GeneratingPair cur = nodes.at(key).pair;
            for (const NielsenMove& m : detail::all_moves()) {
                GeneratingPair child = forward_turn ? apply_move(a, cur, m)
                                                    : apply_moves(a, cur, detail::inverse_moves(m));
                if (detail::pair_norm(child) > norm_bound) continue;
                std::string ck = detail::pair_key(child);
                if (nodes.contains(ck)) continue;
                nodes[ck] = {child, key, m, next_depth};
                if (other.contains(ck)) return finish(fwd, bwd, ck);
                next.push_back(ck);
            }
        }
        front = std::move(next);
        (forward_turn ? depth_f : depth_b) = next_depth;
    }
    return std::nullopt;
}

}  // namespace farey_nielsen
