#pragma once

#include "iso/covering.hpp"
#include "iso/simplex.hpp"
#include "iso/subdivision.hpp"

namespace iso {

// All binary decisions of the folding model, fixed: the subdivision with
// its auxiliary vertices, one derived vertex per source vertex, and the
// directed derived arcs each source edge traverses (a trail). What remains
// free are the auxiliary positions, handled by the residual LP.
struct Skeleton {
    Subdivision sub;
    Rat scale_cap;
    std::vector<int> placement;          // source vertex -> derived vertex
    std::vector<std::vector<int>> arcs;  // per source edge: derived arcs, arc = 2*edge + dir
};

struct SkeletonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Extracts the skeleton of a certificate. Every placement and walk point
// becomes a derived vertex; walks must traverse each directed derived arc
// at most once per source edge.
Skeleton skeleton_from_certificate(const MetricGraph& src, const MetricGraph& dst,
                                   const FoldingMap& fm);

// Variable layout of the residual LP, for tests and solution extraction.
struct SkeletonLp {
    LinearProgram lp;
    int var_o = -1;
    std::vector<int> var_aux; // derived vertex -> position variable (-1 if pinned)
    // (source edge, index into skeleton arcs) -> length variable
    std::vector<std::vector<int>> var_len;
    std::vector<std::vector<int>> var_flow;
};

// The constraints left after fixing the binaries: lengths tied to positions,
// position monotonicity with pinned endpoints, flow demand gated by the
// scale cap, and the per-source-edge budget sum(l) <= o * len(s).
// Checks the fixed-binary constraints (coverage, degrees) first and throws
// SkeletonError when they fail.
SkeletonLp build_lp(const MetricGraph& src, const Skeleton& skeleton);

struct RefineResult {
    FoldingMap certificate;
    Rat scale;
    LpStatus status = LpStatus::Infeasible;
};

// Re-optimizes auxiliary positions of a verified certificate; the refined
// scale never exceeds fm.scale and the re-emitted certificate verifies at
// it. max_aux_per_edge, when nonnegative, rejects certificates needing
// more auxiliary vertices per target edge.
RefineResult refine(const MetricGraph& src, const MetricGraph& dst, const FoldingMap& fm,
                    int max_aux_per_edge = -1);

} // namespace iso
