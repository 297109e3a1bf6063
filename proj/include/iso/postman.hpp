#pragma once

#include "iso/graph.hpp"

namespace iso {

struct ParityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TJoinResult {
    Rat length;
    // Edge indices with multiplicity; the odd-degree vertex set of this
    // multiset is exactly T.
    std::vector<int> edges;
};

// Minimum-length edge multiset whose odd-degree vertices are exactly T.
// Solved by all-pairs shortest paths plus bitmask-DP perfect matching on T;
// |T| is capped at 20.
TJoinResult min_t_join(const MetricGraph& g, const std::vector<int>& T,
                       const DistanceTable* dist = nullptr);

// Shortest closed walk traversing every edge at least once.
Rat postman_closed(const MetricGraph& g);

// Shortest open walk traversing every edge at least once (endpoints free).
Rat postman_open(const MetricGraph& g);

// Optimal scale factor when the source is a single cycle of the given length.
Rat optimal_scale_cycle_source(const Rat& src_cycle_length, const MetricGraph& dst);

} // namespace iso
