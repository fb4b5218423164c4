#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stmax/finite_field.hpp"
#include "stmax/graph.hpp"

namespace stmax {

// Point of PG(2,q), normalized so the first nonzero coordinate is 1.
struct ProjPoint {
    std::array<FieldElem, 3> x;
    bool operator==(const ProjPoint& o) const = default;
};

struct PolarityGraphBundle {
    FieldSpec field;
    std::vector<ProjPoint> points;               // vertex i = points[i]
    Graph simple_graph;                          // no loops stored
    std::vector<std::uint32_t> absolute_indices; // sorted, size q+1
    std::uint64_t looped_degree;                 // q+1
};

// All q^2+q+1 points in deterministic order: (1,a,b) with a outer and b
// inner over element order, then (0,1,c), then (0,0,1).
std::vector<ProjPoint> enumerate_points(const FieldSpec& f);

// Identity bilinear form x0*y0 + x1*y1 + x2*y2.
FieldElem form(const FieldSpec& f, const ProjPoint& p, const ProjPoint& r);

// Indices of self-orthogonal points; throws PolarityDegenerate unless
// exactly q+1 are found.
std::vector<std::uint32_t> absolute_points(const FieldSpec& f);

PolarityGraphBundle build_er_graph(const FieldSpec& f);

}  // namespace stmax
