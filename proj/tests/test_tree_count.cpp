#include "stmax/tree_count.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stmax/errors.hpp"
#include "stmax/graph_io.hpp"
#include "test_util.hpp"

using namespace stmax;

namespace {

Graph cycle(uint32_t n) {
    Graph g(n);
    for (uint32_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph complete(uint32_t n) {
    Graph g(n);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph complete_bipartite(uint32_t a, uint32_t b) {
    Graph g(a + b);
    for (uint32_t u = 0; u < a; ++u)
        for (uint32_t v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t n, int span) {
    IntMatrix m(n, n);
    std::uniform_int_distribution<int> pick(-span, span);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = pick(rng);
    return m;
}

}  // namespace

TEST_CASE("determinants of fixed matrices") {
    IntMatrix empty(0, 0);
    CHECK(det_bareiss(empty) == 1);
    CHECK(det_crt(empty) == 1);
    IntMatrix one(1, 1);
    one.at(0, 0) = -7;
    CHECK(det_bareiss(one) == -7);
    CHECK(det_crt(one) == -7);
    IntMatrix two(2, 2);
    two.at(0, 0) = 3;
    two.at(0, 1) = 5;
    two.at(1, 0) = 2;
    two.at(1, 1) = 4;
    CHECK(det_bareiss(two) == 2);
    // singular with a zero pivot that forces a row swap
    IntMatrix sing(3, 3);
    sing.at(0, 1) = 1;
    sing.at(1, 0) = 1;
    sing.at(2, 0) = 1;
    sing.at(2, 1) = 1;
    CHECK(det_bareiss(sing) == 0);
    CHECK(det_crt(sing) == 0);
    // Vandermonde on 2, 3, 5: det = (3-2)(5-2)(5-3) = 6
    IntMatrix vand(3, 3);
    const long xs[3] = {2, 3, 5};
    for (int i = 0; i < 3; ++i) {
        long pow = 1;
        for (int j = 0; j < 3; ++j) {
            vand.at(i, j) = pow;
            pow *= xs[i];
        }
    }
    CHECK(det_bareiss(vand) == 6);
    CHECK(det_crt(vand) == 6);
}

TEST_CASE("bareiss and crt agree on random matrices") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        IntMatrix m = random_matrix(rng, n, 50);
        const mpz_class direct = det_bareiss(m);
        CHECK(det_crt(m) == direct);
    }
    // a few larger ones with bigger entries (multi-prime CRT territory)
    for (int trial = 0; trial < 10; ++trial) {
        IntMatrix m = random_matrix(rng, 25, 1000000);
        CHECK(det_crt(m) == det_bareiss(m));
    }
}

TEST_CASE("crt determinant is identical across worker counts") {
    std::mt19937 rng(86);
    IntMatrix m = random_matrix(rng, 30, 1000000000);
    const mpz_class w1 = det_crt(m, 1);
    CHECK(det_crt(m, 2) == w1);
    CHECK(det_crt(m, 8) == w1);
    CHECK(det_bareiss(m) == w1);
}

TEST_CASE("crt prime list is deterministic, descending, prime") {
    const auto primes = detail::crt_primes(20);
    REQUIRE(primes.size() == 20);
    CHECK(primes[0] == 2147483647u);  // 2^31 - 1
    for (std::size_t i = 0; i < primes.size(); ++i) {
        CHECK(detail::is_prime_u32(primes[i]));
        if (i) CHECK(primes[i] < primes[i - 1]);
    }
    CHECK_FALSE(detail::is_prime_u32(1));
    CHECK_FALSE(detail::is_prime_u32(2147483647u - 2));  // 3 * 715827881 * ...
    CHECK(detail::is_prime_u32(2));
    CHECK(detail::is_prime_u32(65537));
}

TEST_CASE("spanning tree counts of named graphs") {
    CHECK(tau(Graph(1)).value == 1);
    CHECK(tau(Graph(2)).value == 0);
    CHECK(tau(cycle(4)).value == 4);
    CHECK(tau(complete(4)).value == 16);   // Cayley 4^2
    CHECK(tau(complete(8)).value == 262144);  // 8^6
    Graph diamond = complete(4);
    diamond.remove_edge(0, 2);
    CHECK(tau(diamond).value == 8);
    CHECK(tau(complete_bipartite(2, 3)).value == 12);
    CHECK(tau(complete_bipartite(3, 4)).value == 432);
    const Graph petersen = decode_graph6("IheA@GUAo");
    CHECK(tau(petersen).value == 2000);
    // disconnected graphs have no spanning tree
    Graph split(5);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK(tau(split).value == 0);
}

TEST_CASE("engines agree and report themselves") {
    const Graph petersen = decode_graph6("IheA@GUAo");
    const TreeCount b = tau(petersen, TauEngine::Bareiss);
    const TreeCount c = tau(petersen, TauEngine::Crt);
    const TreeCount a = tau(petersen);
    CHECK(b.value == 2000);
    CHECK(c.value == 2000);
    CHECK(b.engine == TauEngine::Bareiss);
    CHECK(c.engine == TauEngine::Crt);
    CHECK(a.engine == TauEngine::Bareiss);  // auto picks Bareiss for small n
    CHECK(engine_name(TauEngine::Bareiss) == "bareiss");
    CHECK(engine_name(TauEngine::Crt) == "crt");
    // closed-form engines are not general-purpose
    CHECK_THROWS_AS(tau(petersen, TauEngine::ClosedFormBipartite), std::invalid_argument);
    CHECK_THROWS_AS(tau(petersen, TauEngine::ClosedFormPolarity), std::invalid_argument);
}

TEST_CASE("tau matches deletion-contraction on every small connected graph") {
    // all graphs on n <= 5 vertices, plus sparse n = 6
    for (uint32_t n = 2; n <= 5; ++n) {
        const auto pairs = testutil::all_pairs(n);
        for (uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
            if (n == 5 && __builtin_popcountll(mask) > 7) continue;
            Graph g(n);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if ((mask >> i) & 1) g.add_edge(pairs[i].first, pairs[i].second);
            }
            CHECK(tau(g).value == testutil::tau_del_contract(g));
        }
    }
    std::mt19937 rng(6174);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testutil::random_graph(rng, 6, 0.4);
        if (g.m() > 9) continue;
        CHECK(tau(g).value == testutil::tau_del_contract(g));
    }
}

TEST_CASE("adding an edge never decreases the count") {
    std::mt19937 rng(31415);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = testutil::random_connected_graph(rng, 4 + rng() % 7);
        const mpz_class before = tau(g).value;
        // add any absent pair
        for (uint32_t u = 0; u < g.n(); ++u) {
            bool added = false;
            for (uint32_t v = u + 1; v < g.n(); ++v) {
                if (!g.has_edge(u, v)) {
                    g.add_edge(u, v);
                    added = true;
                    break;
                }
            }
            if (added) break;
        }
        CHECK(tau(g).value >= before);
    }
}

TEST_CASE("complete bipartite closed form") {
    for (uint64_t a = 1; a <= 6; ++a) {
        for (uint64_t b = 1; b <= 6; ++b) {
            CHECK(tau_complete_bipartite(a, b) ==
                  tau(complete_bipartite(uint32_t(a), uint32_t(b))).value);
        }
    }
    CHECK(tau_complete_bipartite(2, 3) == 12);
    CHECK(tau_complete_bipartite(3, 4) == 432);
}

TEST_CASE("polarity closed form matches the matrix-tree count") {
    CHECK(tau_er_closed_form(2) == 49);
    CHECK(tau_er_closed_form(3) == 371293);
    CHECK_THROWS_AS(tau_er_closed_form(6), NotAPrimePower);
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL}) {
        CAPTURE(q);
        const auto b = build_er_graph(FieldSpec::make(q));
        CHECK(tau(b.simple_graph, TauEngine::Bareiss).value == tau_er_closed_form(q));
        CHECK(tau(b.simple_graph, TauEngine::Crt).value == tau_er_closed_form(q));
    }
}

TEST_CASE("spectral identity for polarity graphs") {
    for (uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL}) {
        CAPTURE(q);
        const auto b = build_er_graph(FieldSpec::make(q));
        const SpectralReport r = verify_polarity_spectrum(b);
        CHECK(r.identity_holds);
        CHECK(r.q == q);
        CHECK(r.n == q * q + q + 1);
        CHECK(r.trace == q + 1);
        CHECK(r.mult_plus == (r.n - 1) / 2);
        CHECK(r.mult_minus == (r.n - 1) / 2);
        CHECK(r.mult_plus + r.mult_minus + 1 == r.n);
    }
}

TEST_CASE("spectral check rejects a tampered bundle") {
    auto b = build_er_graph(FieldSpec::make(3));
    b.simple_graph.remove_edge(b.simple_graph.to_edge_list()[0].first,
                               b.simple_graph.to_edge_list()[0].second);
    CHECK_THROWS_AS(verify_polarity_spectrum(b), IdentityFailed);
}

TEST_CASE("laplacian minor shape and content") {
    const Graph g = cycle(4);
    IntMatrix m = laplacian_minor(g);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    CHECK(m.at(0, 0) == 2);
    CHECK(m.at(0, 1) == -1);
    CHECK(m.at(0, 2) == 0);
    CHECK(m.at(2, 2) == 2);
    CHECK(det_bareiss(laplacian_minor(g)) == 4);
}
