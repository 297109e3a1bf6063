#pragma once

#include "iso/graph.hpp"

namespace iso {

struct InvalidGranularity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Target graph refined with ordered auxiliary vertices along each base
// edge. Derived vertices are the base vertices plus the auxiliaries; each
// derived edge maps to one sub-interval of a base edge.
class Subdivision {
public:
    struct Segment {
        int base_edge;
        Rat lo;
        Rat hi;
    };

    // Builds the derived graph from per-base-edge interior offsets. Offsets
    // must be strictly inside (0,1); duplicates are merged, order is sorted.
    Subdivision(const MetricGraph& base, std::vector<std::vector<Rat>> aux_offsets);

    const MetricGraph& base() const { return base_; }
    const MetricGraph& derived() const { return derived_; }

    // Base-graph location of a derived vertex.
    const Point& vertex_point(int derived_vertex) const { return vertex_point_[derived_vertex]; }
    // Base-edge interval of a derived edge.
    const Segment& segment(int derived_edge) const { return segments_[derived_edge]; }
    // Derived vertices along a base edge, in predecessor order from the
    // u endpoint (offset 0) to the v endpoint (offset 1).
    const std::vector<int>& chain(int base_edge) const { return chains_[base_edge]; }

    // Derived vertex sitting at a base-graph point, if any.
    std::optional<int> locate(const Point& p) const;

    // Splices auxiliaries back out; the result is structurally the base graph.
    MetricGraph splice() const;

private:
    MetricGraph base_;
    MetricGraph derived_;
    std::vector<Point> vertex_point_;
    std::vector<Segment> segments_;
    std::vector<std::vector<int>> chains_;
};

// Uniform subdivision: every base edge split into q equal parts
// (auxiliary offsets i/q). q = 1 reproduces the base graph.
Subdivision subdivide(const MetricGraph& g, unsigned q);

// Integer subdivision producing a plain metric graph: every edge replaced
// by a path of q edges of length len/q. Used by the hardness gadgets.
MetricGraph subdivide_plain(const MetricGraph& g, unsigned q);

} // namespace iso
