#include "stmax/projective_plane.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "stmax/graph_io.hpp"

using namespace stmax;

namespace {

std::map<uint32_t, uint32_t> degree_histogram(const Graph& g) {
    std::map<uint32_t, uint32_t> h;
    for (uint32_t d : g.degrees()) ++h[d];
    return h;
}

}  // namespace

TEST_CASE("point enumeration covers the plane exactly once") {
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL, 11ULL, 13ULL, 16ULL}) {
        CAPTURE(q);
        const FieldSpec f = FieldSpec::make(q);
        const auto pts = enumerate_points(f);
        REQUIRE(pts.size() == q * q + q + 1);
        // normalization: first nonzero coordinate is 1
        for (const auto& pt : pts) {
            uint32_t first = 0;
            while (first < 3 && f.is_zero(pt.x[first])) ++first;
            REQUIRE(first < 3);
            CHECK(pt.x[first] == f.one());
        }
        // pairwise distinct (normalization makes representatives unique)
        std::set<std::vector<uint64_t>> seen;
        for (const auto& pt : pts) {
            seen.insert({f.index_of(pt.x[0]), f.index_of(pt.x[1]), f.index_of(pt.x[2])});
        }
        CHECK(seen.size() == pts.size());
        // deterministic order: block of (1,a,b), then (0,1,c), then (0,0,1)
        CHECK(pts.front().x[0] == f.one());
        CHECK(f.is_zero(pts.back().x[0]));
        CHECK(f.is_zero(pts.back().x[1]));
        CHECK(pts.back().x[2] == f.one());
        CHECK(f.is_zero(pts[q * q].x[0]));
        CHECK(pts[q * q].x[1] == f.one());
    }
}

TEST_CASE("the form is symmetric and bilinear on representatives") {
    const FieldSpec f = FieldSpec::make(4);
    const auto pts = enumerate_points(f);
    for (const auto& a : pts) {
        for (const auto& b : pts) {
            CHECK(form(f, a, b) == form(f, b, a));
        }
    }
}

TEST_CASE("absolute point counts and q=3 identities") {
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL}) {
        CAPTURE(q);
        const FieldSpec f = FieldSpec::make(q);
        const auto abs = absolute_points(f);
        CHECK(abs.size() == q + 1);
        CHECK(std::is_sorted(abs.begin(), abs.end()));
        const auto pts = enumerate_points(f);
        for (uint32_t i : abs) CHECK(f.is_zero(form(f, pts[i], pts[i])));
    }
    // over GF(3) the absolutes are the normalizations of (1,1,1), (1,1,2),
    // (1,2,1), (1,2,2): indices 4, 5, 7, 8 in enumeration order
    const FieldSpec f3 = FieldSpec::make(3);
    CHECK(absolute_points(f3) == std::vector<uint32_t>{4, 5, 7, 8});
}

TEST_CASE("polarity graph profile for q = 2") {
    const auto b = build_er_graph(FieldSpec::make(2));
    CHECK(b.simple_graph.n() == 7);
    CHECK(b.simple_graph.m() == 9);
    CHECK(b.looped_degree == 3);
    CHECK(b.absolute_indices == std::vector<uint32_t>{1, 2, 5});
    CHECK(degree_histogram(b.simple_graph) == std::map<uint32_t, uint32_t>{{2, 3}, {3, 4}});
    CHECK(b.simple_graph.to_edge_list() ==
          std::vector<Edge>{{0, 4}, {0, 5}, {0, 6}, {1, 3}, {1, 4}, {2, 3}, {2, 6}, {3, 5}, {4, 6}});
    CHECK(encode_graph6(b.simple_graph) == "FBqTO");
}

TEST_CASE("polarity graph profile for q = 3") {
    const auto b = build_er_graph(FieldSpec::make(3));
    CHECK(b.simple_graph.n() == 13);
    CHECK(b.simple_graph.m() == 24);
    CHECK(b.absolute_indices == std::vector<uint32_t>{4, 5, 7, 8});
    CHECK(degree_histogram(b.simple_graph) == std::map<uint32_t, uint32_t>{{3, 4}, {4, 9}});
    CHECK(encode_graph6(b.simple_graph) == "LGH?x`OwCIPDcc");
}

TEST_CASE("degree profile, size, and freeness across prime powers") {
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL}) {
        CAPTURE(q);
        const auto b = build_er_graph(FieldSpec::make(q));
        const uint64_t n = q * q + q + 1;
        CHECK(b.simple_graph.n() == n);
        CHECK(2 * b.simple_graph.m() == n * (q + 1) - (q + 1));  // absolutes lose their loop
        const auto hist = degree_histogram(b.simple_graph);
        CHECK(hist.at(uint32_t(q)) == q + 1);
        CHECK(hist.at(uint32_t(q + 1)) == q * q);
        CHECK(b.simple_graph.is_c4_free());
        CHECK(b.simple_graph.is_connected());
        // absolutes are exactly the vertices of degree q
        std::vector<uint32_t> low_degree;
        for (uint32_t v = 0; v < n; ++v) {
            if (b.simple_graph.degree(v) == q) low_degree.push_back(v);
        }
        CHECK(low_degree == b.absolute_indices);
    }
}

TEST_CASE("neighborhoods are projective lines") {
    // N(u) union {u if absolute} is the polar line of u: exactly the points
    // orthogonal to u, and any two vertices share exactly one line point.
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 9ULL}) {
        CAPTURE(q);
        const FieldSpec f = FieldSpec::make(q);
        const auto b = build_er_graph(f);
        const auto& pts = b.points;
        const uint64_t n = pts.size();
        for (uint32_t u = 0; u < n; ++u) {
            uint64_t on_line = 0;
            for (uint32_t v = 0; v < n; ++v) {
                const bool orth = f.is_zero(form(f, pts[u], pts[v]));
                if (orth) ++on_line;
                if (u != v) CHECK(b.simple_graph.has_edge(u, v) == orth);
            }
            CHECK(on_line == q + 1);  // a line of PG(2,q)
        }
    }
}
