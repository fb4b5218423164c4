#include "stmax/search.hpp"

#include <atomic>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>

#include "stmax/errors.hpp"
#include "stmax/tree_count.hpp"

namespace stmax {

std::string forbidden_name(Forbidden f) { return f == Forbidden::C3 ? "c3" : "c4"; }

namespace {

constexpr std::uint32_t kMaxN = 8;
constexpr std::uint32_t kSplitDepth = 8;  // DFS prefix length carved into tasks

// Laplacian-minor determinant; values stay far below 2^63 for n <= 8
// (Cayley bound 8^6) so plain integer Bareiss is exact.
std::int64_t tau_small(const std::uint8_t adj[kMaxN], std::uint32_t n) {
    std::int64_t m[kMaxN - 1][kMaxN - 1] = {};
    for (std::uint32_t i = 1; i < n; ++i) {
        m[i - 1][i - 1] = std::popcount(adj[i]);
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if ((adj[i] >> j) & 1) m[i - 1][j - 1] = m[j - 1][i - 1] = -1;
        }
    }
    const std::uint32_t d = n - 1;
    std::int64_t prev = 1;
    for (std::uint32_t k = 0; k + 1 < d; ++k) {
        if (m[k][k] == 0) {
            std::uint32_t piv = k + 1;
            while (piv < d && m[piv][k] == 0) ++piv;
            if (piv == d) return 0;
            for (std::uint32_t j = k; j < d; ++j) std::swap(m[k][j], m[piv][j]);
            for (std::uint32_t j = 0; j < d; ++j) m[piv][j] = -m[piv][j];  // keep det sign
        }
        for (std::uint32_t i = k + 1; i < d; ++i) {
            for (std::uint32_t j = k + 1; j < d; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return m[d - 1][d - 1];
}

struct Best {
    std::int64_t tau = 0;
    std::vector<Edge> witness;
    std::uint64_t examined = 0;

    void take(std::int64_t t, const std::vector<Edge>& w) {
        if (t > tau || (t == tau && (witness.empty() || w < witness))) {
            tau = t;
            witness = w;
        }
    }
    void merge(const Best& o) {
        examined += o.examined;
        if (o.tau > tau || (o.tau == tau && !o.witness.empty() &&
                            (witness.empty() || o.witness < witness))) {
            tau = o.tau;
            witness = o.witness;
        }
    }
};

struct Dfs {
    std::uint32_t n;
    Forbidden forbidden;
    bool maximal_only;
    std::vector<Edge> slots;  // all C(n,2) pairs, lex order
    std::uint8_t adj[kMaxN] = {};
    std::uint8_t cn[kMaxN][kMaxN] = {};
    std::vector<Edge> chosen;
    Best best;

    Dfs(std::uint32_t n_, Forbidden f, bool maximal)
        : n(n_), forbidden(f), maximal_only(maximal) {
        for (std::uint32_t u = 0; u < n; ++u) {
            for (std::uint32_t v = u + 1; v < n; ++v) slots.emplace_back(u, v);
        }
        chosen.reserve(slots.size());
    }

    // Would adding (u, v) create the forbidden subgraph?
    bool blocked(std::uint32_t u, std::uint32_t v) const {
        if (forbidden == Forbidden::C3) return cn[u][v] != 0;
        // a new 4-cycle through uv closes as u-v-x-y-u with y a common
        // neighbor of u and x; scanning x over N(v) finds every one
        std::uint8_t nb = adj[v];
        while (nb) {
            const std::uint32_t x = std::countr_zero(nb);
            nb &= nb - 1;
            if (x != u && cn[u][x] != 0) return true;
        }
        return false;
    }

    void link(std::uint32_t u, std::uint32_t v) {
        for (std::uint32_t w = 0; w < n; ++w) {
            if ((adj[u] >> w) & 1) {
                ++cn[w][v];
                ++cn[v][w];
            }
            if ((adj[v] >> w) & 1) {
                ++cn[w][u];
                ++cn[u][w];
            }
        }
        adj[u] |= std::uint8_t(1u << v);
        adj[v] |= std::uint8_t(1u << u);
    }

    void unlink(std::uint32_t u, std::uint32_t v) {
        adj[u] &= std::uint8_t(~(1u << v));
        adj[v] &= std::uint8_t(~(1u << u));
        for (std::uint32_t w = 0; w < n; ++w) {
            if ((adj[u] >> w) & 1) {
                --cn[w][v];
                --cn[v][w];
            }
            if ((adj[v] >> w) & 1) {
                --cn[w][u];
                --cn[u][w];
            }
        }
    }

    bool connected() const {
        std::uint8_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint8_t next = 0;
            std::uint8_t f = frontier;
            while (f) {
                const std::uint32_t u = std::countr_zero(f);
                f &= std::uint8_t(f - 1);
                next |= std::uint8_t(adj[u] & ~seen);
            }
            seen |= next;
            frontier = next;
        }
        return seen == (1u << n) - 1;
    }

    bool edge_maximal() const {
        for (std::uint32_t u = 0; u < n; ++u) {
            for (std::uint32_t v = u + 1; v < n; ++v) {
                if ((adj[u] >> v) & 1) continue;
                if (!blocked(u, v)) return false;
            }
        }
        return true;
    }

    void leaf() {
        if (!connected()) return;
        if (maximal_only && !edge_maximal()) return;
        ++best.examined;
        best.take(tau_small(adj, n), chosen);
    }

    void run(std::size_t idx) {
        if (idx == slots.size()) {
            leaf();
            return;
        }
        const auto [u, v] = slots[idx];
        if (!blocked(u, v)) {
            link(u, v);
            chosen.push_back(slots[idx]);
            run(idx + 1);
            chosen.pop_back();
            unlink(u, v);
        }
        run(idx + 1);
    }

    // Enumerate feasible include/skip prefixes of the first `depth` slots.
    void split(std::size_t idx, std::size_t depth, std::uint32_t mask,
               std::vector<std::uint32_t>& out) {
        if (idx == depth || idx == slots.size()) {
            out.push_back(mask);
            return;
        }
        const auto [u, v] = slots[idx];
        if (!blocked(u, v)) {
            link(u, v);
            split(idx + 1, depth, mask | (1u << idx), out);
            unlink(u, v);
        }
        split(idx + 1, depth, mask, out);
    }

    void replay_prefix(std::uint32_t mask, std::size_t depth) {
        for (std::size_t i = 0; i < std::min(depth, slots.size()); ++i) {
            if (mask & (1u << i)) {
                link(slots[i].first, slots[i].second);
                chosen.push_back(slots[i]);
            }
        }
    }
};

}  // namespace

SearchResult exhaustive_st(std::uint32_t n, Forbidden forbidden, bool maximal_only,
                           unsigned workers) {
    if (n < 2 || n > kMaxN) {
        throw InstanceTooLarge("exhaustive search supports 2 <= n <= " + std::to_string(kMaxN) +
                               ", got n = " + std::to_string(n));
    }

    Best total;
    if (workers <= 1) {
        Dfs d(n, forbidden, maximal_only);
        d.run(0);
        total = std::move(d.best);
    } else {
        std::vector<std::uint32_t> prefixes;
        {
            Dfs splitter(n, forbidden, maximal_only);
            splitter.split(0, kSplitDepth, 0, prefixes);
        }
        std::vector<Best> results(prefixes.size());
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= prefixes.size()) return;
                Dfs d(n, forbidden, maximal_only);
                d.replay_prefix(prefixes[i], kSplitDepth);
                d.run(std::min<std::size_t>(kSplitDepth, d.slots.size()));
                results[i] = std::move(d.best);
            }
        };
        std::vector<std::thread> pool;
        const unsigned nthreads = std::min<std::size_t>(workers, prefixes.size());
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        for (const Best& b : results) total.merge(b);  // fixed fold order
    }

    SearchResult res;
    res.n = n;
    res.forbidden = forbidden;
    res.max_tau = total.tau;
    res.witness = std::move(total.witness);
    res.graphs_examined = total.examined;
    res.maximal_only = maximal_only;

    // paranoia: the winning graph must survive the full-strength checks
    Graph g = Graph::from_edge_list(n, res.witness);
    bool free_ok = forbidden == Forbidden::C4 ? g.is_c4_free() : [&] {
        for (const auto& [u, v] : g.to_edge_list()) {
            if (g.common_neighbors(u, v) != 0) return false;
        }
        return true;
    }();
    if (!g.is_connected() || !free_ok || tau(g).value != res.max_tau) {
        throw std::logic_error("search witness failed re-verification");
    }
    return res;
}

WarmupReport verify_warmup_guess(std::uint32_t n, unsigned workers) {
    if (n < 4 || n > kMaxN) {
        throw InstanceTooLarge("warm-up comparison supports 4 <= n <= " + std::to_string(kMaxN));
    }
    SearchResult sr = exhaustive_st(n, Forbidden::C3, false, workers);
    WarmupReport rep;
    rep.n = n;
    rep.max_tau = sr.max_tau;
    rep.bipartite_tau = tau_complete_bipartite(n / 2, (n + 1) / 2);
    rep.guess_holds = rep.max_tau == rep.bipartite_tau;
    rep.witness = std::move(sr.witness);
    return rep;
}

}  // namespace stmax
