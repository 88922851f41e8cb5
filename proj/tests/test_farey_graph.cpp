#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracle_support.hpp"

using namespace farey_nielsen;
using fn_test::Rng;

TEST_CASE("vertex canonicalization") {
    CHECK(FareyVertex(-1, -2) == FareyVertex(1, 2));
    CHECK(FareyVertex(2, 4) == FareyVertex(1, 2));
    CHECK(FareyVertex(-3, 0) == FareyVertex::infinity());
    CHECK_THROWS_AS(FareyVertex(0, 0), Error);
}

TEST_CASE("adjacency") {
    CHECK(adjacent(FareyVertex::infinity(), FareyVertex(0, 1)));
    CHECK(adjacent(FareyVertex(1, 1), FareyVertex(2, 1)));
    CHECK_FALSE(adjacent(FareyVertex(0, 1), FareyVertex(2, 5)));
}

TEST_CASE("link indices and the two turning anchors") {
    FareyVertex inf = FareyVertex::infinity();
    FareyVertex zero(0, 1);
    // base 0: the integer n sits at link position n
    for (long n = -5; n <= 5; ++n) {
        CHECK(link_index(inf, zero, FareyVertex(n, 1)) == Int(n));
    }
    CHECK(link_index(inf, zero, zero) == 0);
    CHECK(abs(link_index(zero, inf, FareyVertex(1, 1))) == 1);
    CHECK_THROWS_AS(link_index(inf, zero, FareyVertex(2, 5)), Error);

    // anchor: turning at infinity equals A(inf) - A^-1(inf)
    for (long x : {-5L, -3L, -1L, 1L, 2L, 3L, 4L}) {
        for (int eps : {1, -1}) {
            IntMatrix2 a{0, Int(eps), 1, Int(x)};
            FareyVertex fwd(a * inf.vec());
            FareyVertex bwd(mat_inv(a) * inf.vec());
            if (fwd == bwd) continue;
            CHECK(turning_number(bwd, inf, fwd) == Int(x));
            // anchor: turning at 0 equals -eps*x
            FareyVertex fz(a * zero.vec());
            FareyVertex bz(mat_inv(a) * zero.vec());
            if (!(fz == bz)) CHECK(turning_number(bz, zero, fz) == Int(-eps) * Int(x));
        }
    }

    // worked examples
    IntMatrix2 a3{0, -1, 1, 3};
    CHECK(turning_number(FareyVertex(-3, 1), inf, zero) == 3);
    IntMatrix2 fib{0, 1, 1, 1};
    CHECK(turning_number(FareyVertex(-1, 1), inf, zero) == 1);
}

TEST_CASE("turning numbers are base independent and antisymmetric") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        FareyVertex v(fn_test::random_vector(rng, 20));
        FareyVertex base = farey_nielsen::detail::some_neighbor(v);
        FareyVertex a = link_neighbor(v, base, Int(fn_test::rand_range(rng, -6, 6)));
        FareyVertex b = link_neighbor(v, base, Int(fn_test::rand_range(rng, -6, 6)));
        if (a == b) continue;
        Int t = turning_number(a, v, b);
        CHECK(turning_number(b, v, a) == -t);
        // any other valid base gives the same link difference
        FareyVertex w2 = link_neighbor(v, base, Int(fn_test::rand_range(rng, -4, 4)));
        CHECK(link_index(v, w2, b) - link_index(v, w2, a) == t);
    }
}

TEST_CASE("|turning| is one more than the number of strictly-between separating edges") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        FareyVertex v(fn_test::random_vector(rng, 8));
        FareyVertex base = farey_nielsen::detail::some_neighbor(v);
        long ka = fn_test::rand_range(rng, -4, 4);
        long kb = fn_test::rand_range(rng, -4, 4);
        if (ka == kb) continue;
        FareyVertex a = link_neighbor(v, base, Int(ka));
        FareyVertex b = link_neighbor(v, base, Int(kb));
        Int t = turning_number(a, v, b);
        // count link edges strictly between that separate a from b
        long separating = 0;
        for (long k = std::min(ka, kb) + 1; k < std::max(ka, kb); ++k) {
            FareyEdge e(v, link_neighbor(v, base, Int(k)));
            if (edge_separates(e, BoundaryPoint(a.boundary_value()), BoundaryPoint(b.boundary_value()))) ++separating;
        }
        CHECK(abs(t) == Int(separating) + 1);
    }
}

TEST_CASE("edge separation on the boundary circle") {
    IntMatrix2 a{0, -1, 1, 3};
    auto [lm, lp] = fixed_points(a);
    CHECK(edge_separates(FareyEdge(FareyVertex(-1, 1), FareyVertex(0, 1)), lp, lm));
    FareyEdge e0inf(FareyVertex(0, 1), FareyVertex::infinity());
    CHECK(edge_separates(e0inf, BoundaryPoint(Rational(-1, 1)), BoundaryPoint(Rational(1, 1))));
    CHECK_FALSE(edge_separates(e0inf, BoundaryPoint(Rational(1, 1)), BoundaryPoint(Rational(2, 1))));
    CHECK_THROWS_AS(edge_separates(e0inf, BoundaryPoint(Rational(0, 1)), BoundaryPoint(Rational(2, 1))), Error);
}

TEST_CASE("farey_distance basics and oracle agreement") {
    CHECK(farey_distance(FareyVertex::infinity(), FareyVertex(0, 1), 5) == 1);
    CHECK(farey_distance(FareyVertex(0, 1), FareyVertex(2, 5), 5) == 2);
    CHECK(farey_distance(FareyVertex(1, 2), FareyVertex(1, 2), 5) == 0);
    CHECK_THROWS_AS(farey_distance(FareyVertex(0, 1), FareyVertex(2, 5), 1), Error);

    Rng rng(13);
    for (int i = 0; i < 60; ++i) {
        FareyVertex u(fn_test::random_vector(rng, 15));
        FareyVertex v(fn_test::random_vector(rng, 15));
        long d = farey_distance(u, v, 30);
        auto oracle = fn_test::bfs_distance_oracle(u, v, Int(40), 12);
        REQUIRE(oracle.has_value());
        CHECK(d == *oracle);
    }
}

TEST_CASE("farey_distance is symmetric and satisfies the triangle inequality") {
    Rng rng(14);
    for (int i = 0; i < 60; ++i) {
        FareyVertex a(fn_test::random_vector(rng, 20));
        FareyVertex b(fn_test::random_vector(rng, 20));
        FareyVertex c(fn_test::random_vector(rng, 20));
        long ab = farey_distance(a, b, 40);
        CHECK(farey_distance(b, a, 40) == ab);
        long bc = farey_distance(b, c, 40);
        long ac = farey_distance(a, c, 40);
        CHECK(ac <= ab + bc);
    }
}

TEST_CASE("complementary triangles") {
    FareyVertex inf = FareyVertex::infinity();
    CHECK(shares_complementary_triangle(FareyEdge(inf, FareyVertex(0, 1)), FareyEdge(FareyVertex(0, 1), FareyVertex(1, 1))));
    CHECK_FALSE(shares_complementary_triangle(FareyEdge(inf, FareyVertex(0, 1)), FareyEdge(FareyVertex(0, 1), FareyVertex(1, 2))));
    CHECK_FALSE(shares_complementary_triangle(FareyEdge(inf, FareyVertex(0, 1)), FareyEdge(FareyVertex(1, 1), FareyVertex(2, 1))));
}

TEST_CASE("separating edges of a path") {
    // orbit window of [[0,-1],[1,4]] through infinity
    FareyPath path(std::vector<FareyVertex>{FareyVertex(-4, 1), FareyVertex::infinity(), FareyVertex(0, 1)});
    auto edges = separating_edges(path, 1);
    REQUIRE(edges.size() == 3);
    CHECK(edges[0] == FareyEdge(FareyVertex::infinity(), FareyVertex(-1, 1)));
    CHECK(edges[1] == FareyEdge(FareyVertex::infinity(), FareyVertex(-2, 1)));
    CHECK(edges[2] == FareyEdge(FareyVertex::infinity(), FareyVertex(-3, 1)));
    // m_i shares a complementary triangle with the exit edge
    CHECK(shares_complementary_triangle(edges[0], FareyEdge(FareyVertex::infinity(), FareyVertex(0, 1))));

    FareyPath small(std::vector<FareyVertex>{FareyVertex(-2, 1), FareyVertex::infinity(), FareyVertex(0, 1)});
    CHECK_THROWS_AS(separating_edges(small, 1), Error);
}

TEST_CASE("separation chain along high-turning paths") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        auto verts = fn_test::random_turning_path(rng, fn_test::rand_range(rng, 3, 6), 3, 6);
        FareyPath path(verts);
        std::set<FareyVertex> all;
        std::vector<FareyEdge> ms;
        for (std::size_t i = 1; i + 1 < verts.size(); ++i) {
            auto edges = separating_edges(path, i);
            ms.push_back(edges[0]);
        }
        // the m_i are pairwise disjoint and separate the path endpoints
        for (std::size_t i = 0; i < ms.size(); ++i) {
            for (std::size_t j = i + 1; j < ms.size(); ++j) {
                CHECK_FALSE(ms[i].incident(ms[j].first()));
                CHECK_FALSE(ms[i].incident(ms[j].second()));
            }
            bool endpoint_on_edge = ms[i].incident(verts.front()) || ms[i].incident(verts.back());
            if (!endpoint_on_edge) {
                CHECK(edge_separates(ms[i], BoundaryPoint(verts.front().boundary_value()),
                                     BoundaryPoint(verts.back().boundary_value())));
            }
        }
    }
}

TEST_CASE("geodesic verdicts") {
    // [[0,-1],[1,4]] orbit window: all turns +-4
    IntMatrix2 a4{0, -1, 1, 4};
    OneOrbit o4 = one_orbit_of(a4, FareyVertex::infinity(), 3);
    CHECK(is_geodesic_by_turning(FareyPath(o4.window)) == GeodesicVerdict::UniqueGeodesic);

    IntMatrix2 a3{0, -1, 1, 3};
    OneOrbit o3 = one_orbit_of(a3, FareyVertex::infinity(), 3);
    CHECK(is_geodesic_by_turning(FareyPath(o3.window)) == GeodesicVerdict::Geodesic);

    FareyPath flat(std::vector<FareyVertex>{FareyVertex::infinity(), FareyVertex(0, 1), FareyVertex(1, 1)});
    CHECK(is_geodesic_by_turning(flat) == GeodesicVerdict::Inconclusive);
}

TEST_CASE("paths reject backtracks unless flagged") {
    std::vector<FareyVertex> back{FareyVertex(0, 1), FareyVertex::infinity(), FareyVertex(0, 1)};
    CHECK_THROWS_AS(FareyPath{back}, Error);
    CHECK_NOTHROW(FareyPath(back, true));
}
