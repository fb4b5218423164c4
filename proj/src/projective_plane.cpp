#include "stmax/projective_plane.hpp"

#include "stmax/errors.hpp"

namespace stmax {

std::vector<ProjPoint> enumerate_points(const FieldSpec& f) {
    std::vector<ProjPoint> pts;
    pts.reserve(f.q() * f.q() + f.q() + 1);
    const FieldElem z = f.zero(), o = f.one();
    for (std::uint64_t a = 0; a < f.q(); ++a) {
        for (std::uint64_t b = 0; b < f.q(); ++b) {
            pts.push_back({{o, f.from_index(a), f.from_index(b)}});
        }
    }
    for (std::uint64_t c = 0; c < f.q(); ++c) pts.push_back({{z, o, f.from_index(c)}});
    pts.push_back({{z, z, o}});
    return pts;
}

FieldElem form(const FieldSpec& f, const ProjPoint& p, const ProjPoint& r) {
    FieldElem s = f.mul(p.x[0], r.x[0]);
    s = f.add(s, f.mul(p.x[1], r.x[1]));
    return f.add(s, f.mul(p.x[2], r.x[2]));
}

namespace {

std::vector<std::uint32_t> absolutes_of(const FieldSpec& f, const std::vector<ProjPoint>& pts) {
    std::vector<std::uint32_t> abs_idx;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
        if (f.is_zero(form(f, pts[i], pts[i]))) abs_idx.push_back(i);
    }
    if (abs_idx.size() != f.q() + 1) {
        throw PolarityDegenerate("expected " + std::to_string(f.q() + 1) + " absolute points, found " +
                                 std::to_string(abs_idx.size()));
    }
    return abs_idx;
}

}  // namespace

std::vector<std::uint32_t> absolute_points(const FieldSpec& f) {
    return absolutes_of(f, enumerate_points(f));
}

PolarityGraphBundle build_er_graph(const FieldSpec& f) {
    std::vector<ProjPoint> pts = enumerate_points(f);
    const std::uint32_t n = static_cast<std::uint32_t>(pts.size());
    Graph g(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (f.is_zero(form(f, pts[i], pts[j]))) g.add_edge(i, j);
        }
    }
    std::vector<std::uint32_t> abs_idx = absolutes_of(f, pts);
    return PolarityGraphBundle{f, std::move(pts), std::move(g), std::move(abs_idx), f.q() + 1};
}

}  // namespace stmax
