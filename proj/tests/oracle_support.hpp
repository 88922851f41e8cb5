#pragma once

// Test-only oracles: deliberately naive, independent of the library's
// solver and search paths.

#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "farey_nielsen/farey_nielsen.hpp"

namespace fn_test {

using namespace farey_nielsen;

using Rng = std::mt19937_64;

inline long rand_range(Rng& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline IntMatrix2 random_unimodular(Rng& rng, int word_len, long entry_cap = 1000000) {
    while (true) {
        IntMatrix2 m = IntMatrix2::identity();
        for (int i = 0; i < word_len; ++i) {
            switch (rng() % 3) {
                case 0: m = m * IntMatrix2{1, Int(rand_range(rng, -3, 3)), 0, 1}; break;
                case 1: m = m * IntMatrix2{1, 0, Int(rand_range(rng, -3, 3)), 1}; break;
                default: m = m * IntMatrix2{0, 1, 1, 0}; break;
            }
        }
        if (mat_height(m) <= entry_cap) return m;
    }
}

inline IntVector2 random_vector(Rng& rng, long cap) {
    while (true) {
        IntVector2 v{Int(rand_range(rng, -cap, cap)), Int(rand_range(rng, -cap, cap))};
        if (!v.is_zero()) return v;
    }
}

// Dumb box search for |Q| = 1.
inline std::optional<IntVector2> box_search_unit(const BinaryQuadraticForm& f, long bound) {
    for (Int q = 0; q <= bound; ++q) {
        for (Int p = -bound; p <= bound; ++p) {
            if (abs(f.eval(p, q)) == 1) return IntVector2{p, q};
        }
    }
    return std::nullopt;
}

// Neighbors of v with height <= cap, by direct enumeration of the link.
inline std::vector<FareyVertex> bounded_neighbors(const FareyVertex& v, const Int& cap) {
    FareyVertex base = farey_nielsen::detail::some_neighbor(v);
    std::vector<FareyVertex> out;
    // |base + k v| <= cap componentwise bounds k
    Int span = 2 * cap + 2;
    Int k0 = 0;
    if (v.p() != 0) k0 = -base.p() / v.p();
    else k0 = -base.q() / v.q();
    for (Int k = k0 - span; k <= k0 + span; ++k) {
        FareyVertex w = link_neighbor(v, base, k);
        if (w.height() <= cap) out.push_back(w);
    }
    return out;
}

// Breadth-first distance in the subgraph of vertices with height <= cap.
// Unpruned within that subgraph; agrees with the true distance whenever some
// geodesic stays under the cap.
inline std::optional<long> bfs_distance_oracle(const FareyVertex& u, const FareyVertex& v, const Int& cap,
                                               long max_depth) {
    if (u == v) return 0;
    std::map<FareyVertex, long> dist{{u, 0}};
    std::queue<FareyVertex> todo;
    todo.push(u);
    while (!todo.empty()) {
        FareyVertex x = todo.front();
        todo.pop();
        long dx = dist[x];
        if (dx >= max_depth) continue;
        for (const FareyVertex& w : bounded_neighbors(x, cap)) {
            if (dist.contains(w)) continue;
            dist[w] = dx + 1;
            if (w == v) return dx + 1;
            todo.push(w);
        }
    }
    return std::nullopt;
}

// All geodesics of length d between u and v, complete thanks to a sector
// window argument: any geodesic's next vertex sits within d+5 link steps of
// the sector of the target.
inline void all_geodesics_impl(const FareyVertex& u, const FareyVertex& v, long d,
                               std::vector<FareyVertex>& prefix, std::vector<std::vector<FareyVertex>>& out) {
    if (d == 0) {
        if (u == v) out.push_back(prefix);
        return;
    }
    if (d == 1) {
        if (adjacent(u, v)) {
            prefix.push_back(v);
            out.push_back(prefix);
            prefix.pop_back();
        }
        return;
    }
    FareyVertex base = farey_nielsen::detail::some_neighbor(u);
    Int k0 = floor_div(cross(u, base) * cross(v, base), cross(u, v));
    for (Int k = k0 - d - 5; k <= k0 + d + 6; ++k) {
        FareyVertex w = link_neighbor(u, base, k);
        bool ok = false;
        try {
            ok = farey_distance(w, v, d - 1) == d - 1;
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) continue;
        prefix.push_back(w);
        all_geodesics_impl(w, v, d - 1, prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<std::vector<FareyVertex>> all_geodesics(const FareyVertex& u, const FareyVertex& v, long d) {
    std::vector<std::vector<FareyVertex>> out;
    std::vector<FareyVertex> prefix{u};
    all_geodesics_impl(u, v, d, prefix, out);
    return out;
}

// Random path built through link indices so that every interior turn has the
// requested minimum absolute value.
inline std::vector<FareyVertex> random_turning_path(Rng& rng, long length, long min_turn, long max_turn) {
    IntMatrix2 t = random_unimodular(rng, 4, 50);
    std::vector<FareyVertex> verts{FareyVertex(t * IntVector2{1, 0}), FareyVertex(t * IntVector2{0, 1})};
    for (long i = 1; i < length; ++i) {
        long mag = rand_range(rng, min_turn, max_turn);
        long sgn = rng() % 2 ? 1 : -1;
        verts.push_back(link_neighbor(verts[i], verts[i - 1], Int(mag * sgn)));
    }
    return verts;
}

}  // namespace fn_test
