#pragma once

#include <string>

#include "stmax/graph.hpp"

namespace stmax {

enum class GraphFormat { EdgeList, Graph6 };

// Edge-list text: header "n m", then one "u v" line per edge with u < v.
std::string encode_edge_list(const Graph& g);
Graph decode_edge_list(const std::string& text);  // throws ParseError with 1-based line

// Header-less graph6, interoperable with nauty et al.
std::string encode_graph6(const Graph& g);
Graph decode_graph6(const std::string& s);  // throws ParseError

// Sniffs the format: a leading ASCII digit means edge list.
Graph read_graph_text(const std::string& text);
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path, GraphFormat fmt);

}  // namespace stmax
