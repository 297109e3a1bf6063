#include "iso/bounds.hpp"

#include <cassert>

namespace iso {

int odd_degree_count(const MetricGraph& g) {
    int count = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 == 1) ++count;
    assert(count % 2 == 0);
    return count;
}

Rat naive_lower(const MetricGraph& src, const MetricGraph& dst) {
    return dst.perimeter() / src.perimeter();
}

namespace {

// Degree if the graph is regular, nullopt otherwise.
std::optional<int> regular_degree(const MetricGraph& g) {
    if (g.vertex_count() == 0) return std::nullopt;
    int d = g.degree(0);
    for (int v = 1; v < g.vertex_count(); ++v)
        if (g.degree(v) != d) return std::nullopt;
    return d;
}

// The bound is attainable (non-strict) only when the source could land
// vertex-on-vertex without forced extra doubling: identical graphs, or
// equal regular degrees with enough odd target vertices to absorb every
// source vertex. Calibrated against the published table; advisory for
// general graphs.
bool bound_is_strict(const MetricGraph& src, const MetricGraph& dst, int o_t, int n_s) {
    if (src.same_structure(dst)) return false;
    auto ds = regular_degree(src);
    auto dt = regular_degree(dst);
    if (ds && dt && *ds == *dt && n_s <= o_t) return false;
    return true;
}

} // namespace

LowerBoundResult improved_lower(const MetricGraph& src, const MetricGraph& dst) {
    LowerBoundResult r;
    r.perimeter_s = src.perimeter();
    r.perimeter_t = dst.perimeter();
    r.odd_target_vertices = odd_degree_count(dst);
    r.source_vertices = src.vertex_count();

    bool uniform = true;
    Rat edge_len(0);
    for (int e = 0; e < dst.edge_count(); ++e) {
        if (e == 0)
            edge_len = dst.edge(e).length;
        else if (dst.edge(e).length != edge_len)
            uniform = false;
    }

    r.doubling_term = 0;
    if (uniform) {
        int excess = r.odd_target_vertices - r.source_vertices;
        if (excess > 0) r.doubling_term = rat(excess, 2) * edge_len;
    } else {
        r.non_uniform_fallback = true;
    }
    r.value = (r.perimeter_t + r.doubling_term) / r.perimeter_s;
    r.strict = bound_is_strict(src, dst, r.odd_target_vertices, r.source_vertices);
    return r;
}

} // namespace iso
