#pragma once

#include "iso/graph.hpp"

#include <iosfwd>
#include <map>

namespace iso {

// Covering certificate: a scale factor, a target location for every source
// vertex, and a routed target walk for every source edge.
struct FoldingMap {
    Rat scale;
    std::map<int, Point> placement; // source vertex -> target point
    std::map<int, Walk> routes;     // source edge -> target walk
};

// Per target edge: elementary intervals with constant covering multiplicity,
// sorted and disjoint.
struct CoverageProfile {
    struct Interval {
        Rat lo;
        Rat hi;
        int multiplicity; // >= 0; 0 marks a gap
    };
    std::vector<std::vector<Interval>> per_edge;
};

// Total target length covered by two or more route layers.
Rat doubled_length(const CoverageProfile& profile, const MetricGraph& dst);

struct VerifyReport {
    bool accepted = false;
    std::vector<std::string> errors;
    CoverageProfile profile;
    Rat total_routed;   // sum of route lengths
    Rat total_budget;   // sum of scale * source edge lengths
    Rat doubled;        // doubled_length of the profile
};

// Checks Problem 1's covering condition at fm.scale: endpoint consistency,
// per-edge length budgets (slack is allowed when realizable by an inserted
// back-and-forth), and full coverage of the target.
VerifyReport verify(const MetricGraph& src, const MetricGraph& dst, const FoldingMap& fm);

// Identity certificate of a graph onto itself at scale 1.
FoldingMap identity_fold(const MetricGraph& g);

// Certificate text format:
//   scale <r>
//   place <src_vertex> v <dst_vertex>
//   place <src_vertex> e <dst_u> <dst_v> <r>
//   route <src_u> <src_v> [<k>] : <point> ; <point> ; ...
// where <point> uses the same `v ...` / `e ...` syntax and <k> selects
// among parallel source edges (default 0).
FoldingMap parse_certificate(std::istream& in, const MetricGraph& src, const MetricGraph& dst);
FoldingMap parse_certificate_string(const std::string& text, const MetricGraph& src,
                                    const MetricGraph& dst);
void write_certificate(std::ostream& out, const FoldingMap& fm, const MetricGraph& src,
                       const MetricGraph& dst);

} // namespace iso
