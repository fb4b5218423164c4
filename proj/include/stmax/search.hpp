#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "stmax/graph.hpp"

namespace stmax {

enum class Forbidden { C3, C4 };
std::string forbidden_name(Forbidden f);

struct SearchResult {
    std::uint32_t n = 0;
    Forbidden forbidden = Forbidden::C4;
    mpz_class max_tau;
    std::vector<Edge> witness;  // lex-smallest among optima
    std::uint64_t graphs_examined = 0;
    bool maximal_only = false;
};

// Exact maximum of tau over labeled connected forbidden-free graphs on n
// vertices, by pruned DFS over the C(n,2) candidate edges in lex order.
// The witness is re-verified before returning. 2 <= n <= 8.
SearchResult exhaustive_st(std::uint32_t n, Forbidden forbidden, bool maximal_only = false,
                           unsigned workers = 1);

struct WarmupReport {
    std::uint32_t n = 0;
    mpz_class max_tau;        // st(n, C3), exhaustive
    mpz_class bipartite_tau;  // tau(K_{floor(n/2), ceil(n/2)})
    bool guess_holds = false;
    std::vector<Edge> witness;
};

// Does the balanced complete bipartite graph maximize tau among
// triangle-free graphs? Compares the exhaustive answer with the closed form.
WarmupReport verify_warmup_guess(std::uint32_t n, unsigned workers = 1);

}  // namespace stmax
