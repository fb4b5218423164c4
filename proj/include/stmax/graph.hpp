#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stmax {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Simple undirected graph; adjacency rows are little-endian bit sets.
class Graph {
public:
    explicit Graph(std::size_t n);

    static Graph from_edge_list(std::size_t n, const std::vector<Edge>& edges);
    std::vector<Edge> to_edge_list() const;  // canonical: u < v, lex sorted

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::size_t words() const { return w_; }

    void add_edge(std::uint32_t u, std::uint32_t v);     // idempotent
    void remove_edge(std::uint32_t u, std::uint32_t v);  // idempotent
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    const std::uint64_t* row(std::uint32_t u) const { return bits_.data() + u * w_; }

    std::uint32_t degree(std::uint32_t u) const;
    std::vector<std::uint32_t> degrees() const;

    std::uint64_t common_neighbors(std::uint32_t u, std::uint32_t v) const;

    bool is_c4_free() const;                 // every pair has <= 1 common neighbor
    bool is_k2t_free(std::uint32_t t) const; // every pair has <= t-1 common neighbors
    bool contains_c2k(std::uint32_t k, std::size_t n_cap = 16) const;
    bool is_connected() const;

    bool operator==(const Graph& o) const = default;

private:
    void check_pair(std::uint32_t u, std::uint32_t v) const;

    std::size_t n_;
    std::size_t w_;
    std::size_t m_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace stmax
