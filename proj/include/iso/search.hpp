#pragma once

#include "iso/covering.hpp"
#include "iso/subdivision.hpp"

#include <cstdint>

namespace iso {

enum class Verdict { Feasible, Infeasible, Timeout };

struct SearchConfig {
    unsigned q = 1;                    // target edges subdivided into q parts
    std::optional<Rat> scale_max;      // default |E(dst)|
    double time_budget_seconds = 600.0;
    std::uint64_t seed = 0;            // reserved for randomized restarts
    std::uint64_t node_limit = 0;      // 0 = unlimited
};

// Pre-fixed parts of a solution, used by the local-improvement loop.
// Placements are base-target points; routes are base-target walks. Both
// must be representable on the 1/q grid.
struct FrozenParts {
    std::map<int, Point> placements;
    std::map<int, Walk> routes;
};

struct DecideResult {
    Verdict verdict = Verdict::Infeasible;
    std::optional<FoldingMap> certificate;
    std::uint64_t nodes = 0;
    // Set when infeasibility was concluded from the lower bound alone.
    bool bound_pruned = false;
};

// Exhaustive decision for the grid model: source vertices restricted to
// the vertices of the 1/q subdivision of the target. A Feasible result
// carries a certificate that verify() accepts at scale alpha.
DecideResult decide(const MetricGraph& src, const MetricGraph& dst, const Rat& alpha,
                    const SearchConfig& cfg, const FrozenParts* frozen = nullptr);

struct MinimizeResult {
    Verdict verdict = Verdict::Infeasible;
    std::optional<Rat> alpha;
    std::optional<FoldingMap> certificate;
    std::vector<Rat> scales_tried;
};

// Smallest grid-representable feasible scale, by ascending decision calls
// starting at the improved lower bound rounded up to the grid.
MinimizeResult minimize(const MetricGraph& src, const MetricGraph& dst, const SearchConfig& cfg);

// Candidate grid scales in [lo, hi]: values at which some source edge's
// budget crosses a multiple of the derived-length granule.
std::vector<Rat> grid_scales(const MetricGraph& src, const MetricGraph& dst, unsigned q,
                             const Rat& lo, const Rat& hi);

// Derived-vertex sequence of a base walk, when every intermediate point
// lies on the subdivision; nullopt otherwise.
std::optional<std::vector<int>> walk_to_derived(const Walk& w, const Subdivision& sub);

} // namespace iso
