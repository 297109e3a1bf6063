#pragma once

#include "iso/rational.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace iso {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected metric graph with exact rational edge lengths. Vertices carry
// opaque string labels; internally they are dense indices. Each edge stores
// a fixed orientation u -> v (lexicographic by label at insertion time) so
// that interior offsets are unambiguous. Multi-edges are permitted,
// self-loops are not.
class MetricGraph {
public:
    struct Edge {
        int u = -1;
        int v = -1;
        Rat length;
    };

    int add_vertex(const std::string& label);
    // Orders the endpoints lexicographically; returns the edge index.
    int add_edge(const std::string& a, const std::string& b, Rat length = Rat(1));
    int add_edge_indices(int a, int b, Rat length);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& label(int v) const { return labels_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::optional<int> find_vertex(const std::string& label) const;
    // Edges between a and b (either orientation), in index order.
    std::vector<int> edges_between(int a, int b) const;
    // Incident edge indices per vertex.
    const std::vector<std::vector<int>>& incidence() const;

    int degree(int v) const;
    Rat perimeter() const;
    bool connected() const;
    bool same_structure(const MetricGraph& other) const;

private:
    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<Edge> edges_;
    mutable std::vector<std::vector<int>> incidence_;
    mutable bool incidence_dirty_ = true;
};

struct ValidationReport {
    bool valid = true;
    bool connected = true;
    bool trivial = false; // no edges
    std::vector<std::string> problems;
};

ValidationReport validate(const MetricGraph& g);

// A location on a graph: either a vertex, or an interior point of an edge
// at rational offset strictly inside (0,1), measured from the edge's u end.
struct Point {
    int vertex = -1;
    int edge = -1;
    Rat offset;

    bool is_vertex() const { return vertex >= 0; }
    static Point at_vertex(int v) { return Point{v, -1, Rat(0)}; }
    static Point interior(int e, Rat off) { return Point{-1, e, std::move(off)}; }

    bool operator==(const Point& o) const {
        if (is_vertex() != o.is_vertex()) return false;
        if (is_vertex()) return vertex == o.vertex;
        return edge == o.edge && offset == o.offset;
    }
};

std::string format_point(const Point& p, const MetricGraph& g);

// A walk is a sequence of points; each consecutive pair must lie on a
// common edge (or coincide at a vertex).
using Walk = std::vector<Point>;

struct BrokenWalk : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One geometric segment of a walk: a sub-interval [lo,hi] of an edge.
// Zero-length steps (repeated points) produce no segment.
struct WalkSegment {
    int edge;
    Rat lo;
    Rat hi; // lo <= hi, as offsets in [0,1]
};

// Resolves the segment between two consecutive walk points; throws
// BrokenWalk when they are not co-located on any edge. Returns nullopt for
// a zero-length step. With parallel edges, a vertex-to-vertex step uses
// the lowest-index connecting edge.
std::optional<WalkSegment> walk_step(const Point& a, const Point& b, const MetricGraph& g);

std::vector<WalkSegment> walk_segments(const Walk& w, const MetricGraph& g);
Rat walk_length(const Walk& w, const MetricGraph& g);

// All-pairs shortest paths over vertices; entries are nullopt when
// unreachable. Exact rational distances.
class DistanceTable {
public:
    explicit DistanceTable(const MetricGraph& g);
    const std::optional<Rat>& dist(int a, int b) const { return d_[a][b]; }
    // Vertices of one shortest path from a to b, inclusive; empty if unreachable.
    std::vector<int> path(int a, int b) const;

private:
    int n_;
    std::vector<std::vector<std::optional<Rat>>> d_;
    std::vector<std::vector<int>> next_;
};

// Graph text format: `v <label>` / `e <u> <v> [<len>]`, `#` comments.
MetricGraph parse_graph(std::istream& in);
MetricGraph parse_graph_string(const std::string& text);
void write_graph(std::ostream& out, const MetricGraph& g);

} // namespace iso
