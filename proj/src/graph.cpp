#include "stmax/graph.hpp"

#include <algorithm>
#include <bit>

#include "stmax/errors.hpp"
#include "stmax/kernels.hpp"

namespace stmax {

Graph::Graph(std::size_t n) : n_(n), w_((n + 63) / 64), bits_(n * w_, 0) {
    if (n < 1) throw VertexOutOfRange("graph needs at least one vertex");
}

void Graph::check_pair(std::uint32_t u, std::uint32_t v) const {
    if (u >= n_ || v >= n_) {
        throw VertexOutOfRange("vertex " + std::to_string(std::max(u, v)) + " out of range [0, " +
                               std::to_string(n_) + ")");
    }
    if (u == v) throw SelfLoopRejected("loop at vertex " + std::to_string(u));
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
    check_pair(u, v);
    std::uint64_t& wu = bits_[u * w_ + v / 64];
    if (wu & (1ULL << (v % 64))) return;
    wu |= 1ULL << (v % 64);
    bits_[v * w_ + u / 64] |= 1ULL << (u % 64);
    ++m_;
}

void Graph::remove_edge(std::uint32_t u, std::uint32_t v) {
    check_pair(u, v);
    std::uint64_t& wu = bits_[u * w_ + v / 64];
    if (!(wu & (1ULL << (v % 64)))) return;
    wu &= ~(1ULL << (v % 64));
    bits_[v * w_ + u / 64] &= ~(1ULL << (u % 64));
    --m_;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    check_pair(u, v);
    return (bits_[u * w_ + v / 64] >> (v % 64)) & 1;
}

Graph Graph::from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

std::vector<Edge> Graph::to_edge_list() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (std::uint32_t u = 0; u < n_; ++u) {
        const std::uint64_t* r = row(u);
        for (std::uint32_t v = u + 1; v < n_; ++v) {
            if ((r[v / 64] >> (v % 64)) & 1) out.emplace_back(u, v);
        }
    }
    return out;
}

std::uint32_t Graph::degree(std::uint32_t u) const {
    return static_cast<std::uint32_t>(kern::popcount(row(u), w_));
}

std::vector<std::uint32_t> Graph::degrees() const {
    std::vector<std::uint32_t> d(n_);
    for (std::uint32_t u = 0; u < n_; ++u) d[u] = degree(u);
    return d;
}

std::uint64_t Graph::common_neighbors(std::uint32_t u, std::uint32_t v) const {
    check_pair(u, v);
    return kern::and_popcount(row(u), row(v), w_);
}

bool Graph::is_c4_free() const { return is_k2t_free(2); }

bool Graph::is_k2t_free(std::uint32_t t) const {
    for (std::uint32_t u = 0; u < n_; ++u) {
        for (std::uint32_t v = u + 1; v < n_; ++v) {
            if (kern::and_popcount(row(u), row(v), w_) > t - 1) return false;
        }
    }
    return true;
}

namespace {

// DFS over simple paths from `start`, closing back to `start` at length len.
// Only vertices >= start are used, so each cycle is searched from its
// smallest vertex only.
bool cycle_dfs(const Graph& g, std::uint32_t start, std::uint32_t cur, std::uint32_t remaining,
               std::uint64_t visited) {
    const std::uint64_t* r = g.row(cur);
    if (remaining == 1) return (r[start / 64] >> (start % 64)) & 1;
    for (std::uint32_t v = start + 1; v < g.n(); ++v) {
        if (visited & (1ULL << v)) continue;
        if (!((r[v / 64] >> (v % 64)) & 1)) continue;
        if (cycle_dfs(g, start, v, remaining - 1, visited | (1ULL << v))) return true;
    }
    return false;
}

}  // namespace

bool Graph::contains_c2k(std::uint32_t k, std::size_t n_cap) const {
    if (n_ > n_cap || n_ > 64) {
        throw InstanceTooLarge("cycle search capped at " + std::to_string(std::min<std::size_t>(n_cap, 64)) +
                               " vertices, got " + std::to_string(n_));
    }
    const std::uint32_t len = 2 * k;
    if (len > n_) return false;
    for (std::uint32_t s = 0; s + len <= n_; ++s) {
        if (cycle_dfs(*this, s, s, len, 1ULL << s)) return true;
    }
    return false;
}

bool Graph::is_connected() const {
    std::vector<std::uint64_t> seen(w_, 0), frontier(w_, 0);
    seen[0] = frontier[0] = 1;  // BFS from vertex 0
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint64_t> next(w_, 0);
        for (std::uint32_t u = 0; u < n_; ++u) {
            if (!((frontier[u / 64] >> (u % 64)) & 1)) continue;
            const std::uint64_t* r = row(u);
            for (std::size_t i = 0; i < w_; ++i) next[i] |= r[i] & ~seen[i];
        }
        for (std::size_t i = 0; i < w_; ++i) {
            if (next[i]) {
                seen[i] |= next[i];
                grew = true;
            }
        }
        frontier = std::move(next);
    }
    return kern::popcount(seen.data(), w_) == n_;
}

}  // namespace stmax
