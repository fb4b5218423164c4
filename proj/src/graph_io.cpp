#include "stmax/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "stmax/errors.hpp"

namespace stmax {

namespace {

// Strict nonnegative decimal; anything else is a parse error.
std::uint64_t parse_u64(const std::string& tok, std::size_t line) {
    if (tok.empty()) throw ParseError("empty integer token", line);
    std::uint64_t v = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') throw ParseError("bad integer '" + tok + "'", line);
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
        if (v > (1ULL << 32)) throw ParseError("integer overflow in '" + tok + "'", line);
    }
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::string encode_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.n() << ' ' << g.m() << '\n';
    for (const auto& [u, v] : g.to_edge_list()) os << u << ' ' << v << '\n';
    return os.str();
}

Graph decode_edge_list(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t ln = 0;
    std::size_t n = 0, m = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        ++ln;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks.size() != 2) throw ParseError("expected header 'n m'", ln);
            n = parse_u64(toks[0], ln);
            m = parse_u64(toks[1], ln);
            if (n < 1) throw ParseError("vertex count must be positive", ln);
            have_header = true;
            continue;
        }
        if (toks.size() != 2) throw ParseError("expected edge 'u v'", ln);
        std::uint64_t u = parse_u64(toks[0], ln), v = parse_u64(toks[1], ln);
        if (u >= n || v >= n) throw ParseError("vertex out of range", ln);
        if (u == v) throw ParseError("self-loop rejected", ln);
        edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
    if (!have_header) throw ParseError("missing header 'n m'", 1);
    Graph g = Graph::from_edge_list(n, edges);
    if (g.m() != m) {
        throw ParseError("header claims " + std::to_string(m) + " edges, found " +
                             std::to_string(g.m()),
                         1);
    }
    return g;
}

std::string encode_graph6(const Graph& g) {
    const std::size_t n = g.n();
    std::string out;
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else if (n <= 258047) {
        out += '~';
        out += static_cast<char>(((n >> 12) & 63) + 63);
        out += static_cast<char>(((n >> 6) & 63) + 63);
        out += static_cast<char>((n & 63) + 63);
    } else {
        out += "~~";
        for (int s = 30; s >= 0; s -= 6) out += static_cast<char>(((n >> s) & 63) + 63);
    }
    // upper triangle, column-major: bit (u, v) for u < v ordered by (v, u)
    std::uint32_t acc = 0;
    int nbits = 0;
    for (std::uint32_t v = 1; v < n; ++v) {
        const std::uint64_t* r = g.row(v);
        for (std::uint32_t u = 0; u < v; ++u) {
            acc = (acc << 1) | static_cast<std::uint32_t>((r[u / 64] >> (u % 64)) & 1);
            if (++nbits == 6) {
                out += static_cast<char>(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits) out += static_cast<char>((acc << (6 - nbits)) + 63);
    return out;
}

Graph decode_graph6(const std::string& s) {
    std::size_t pos = 0;
    auto next = [&]() -> std::uint32_t {
        if (pos >= s.size()) throw ParseError("truncated graph6 string", 1);
        char c = s[pos++];
        if (c < 63 || c > 126) throw ParseError("invalid graph6 byte", 1);
        return static_cast<std::uint32_t>(c - 63);
    };
    std::uint64_t n;
    if (pos < s.size() && s[pos] == '~') {
        ++pos;
        if (pos < s.size() && s[pos] == '~') {
            ++pos;
            n = 0;
            for (int i = 0; i < 6; ++i) n = (n << 6) | next();
        } else {
            n = 0;
            for (int i = 0; i < 3; ++i) n = (n << 6) | next();
        }
    } else {
        n = next();
    }
    if (n < 1) throw ParseError("graph6 with zero vertices", 1);
    if (n > 16384) throw InstanceTooLarge("graph6 header claims " + std::to_string(n) + " vertices");
    Graph g(n);
    std::uint32_t acc = 0;
    int nbits = 0;
    for (std::uint32_t v = 1; v < n; ++v) {
        for (std::uint32_t u = 0; u < v; ++u) {
            if (nbits == 0) {
                acc = next();
                nbits = 6;
            }
            if ((acc >> (nbits - 1)) & 1) g.add_edge(u, v);
            --nbits;
        }
    }
    if (pos != s.size()) throw ParseError("trailing bytes after graph6 payload", 1);
    return g;
}

Graph read_graph_text(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) throw ParseError("empty graph file", 1);
    if (text[i] >= '0' && text[i] <= '9') return decode_edge_list(text);
    std::size_t end = text.find_first_of("\r\n", i);
    return decode_graph6(text.substr(i, end == std::string::npos ? end : end - i));
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_graph_text(ss.str());
}

void write_graph_file(const Graph& g, const std::string& path, GraphFormat fmt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
    if (fmt == GraphFormat::EdgeList) {
        out << encode_edge_list(g);
    } else {
        out << encode_graph6(g) << '\n';
    }
    if (!out) throw ParseError("write failed for '" + path + "'", 0);
}

}  // namespace stmax
