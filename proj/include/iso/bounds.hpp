#pragma once

#include "iso/graph.hpp"

namespace iso {

// Lower bound on the optimal scale factor, with its component breakdown:
// value = (perimeter_t + doubling_term) / perimeter_s.
struct LowerBoundResult {
    Rat value;
    bool strict = false;
    Rat perimeter_t;
    Rat doubling_term;
    Rat perimeter_s;
    int odd_target_vertices = 0; // o_t
    int source_vertices = 0;     // n_s
    bool non_uniform_fallback = false;
};

// Number of odd-degree vertices; always even.
int odd_degree_count(const MetricGraph& g);

// perimeter(dst) / perimeter(src): every target edge must be covered.
Rat naive_lower(const MetricGraph& src, const MetricGraph& dst);

// Adds max(0, (o_t - n_s)/2) forced fully-doubled target edges. The
// doubling term requires uniform target edge lengths; otherwise the result
// falls back to the naive bound with non_uniform_fallback set.
LowerBoundResult improved_lower(const MetricGraph& src, const MetricGraph& dst);

} // namespace iso
