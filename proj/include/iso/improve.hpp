#pragma once

#include "iso/search.hpp"

namespace iso {

struct ImproveConfig {
    int rounds = 8;
    Rat keep_fraction = rat(1, 2);     // share of placements/routes frozen per round
    Rat worsen_tolerance = rat(1, 20); // intermediate candidates may be this much worse
    std::uint64_t seed = 0;
    unsigned coarse_q = 1; // grid of the initial solve
    unsigned round_q = 2;  // grid of the per-round re-solves
    double round_time_budget_seconds = 60.0;
    std::optional<Rat> scale_max;
};

struct RoundInfo {
    int round = 0;
    Rat target;              // scale attempted this round
    Verdict verdict = Verdict::Infeasible;
    std::optional<Rat> refined;
    bool new_best = false;
    int frozen_placements = 0;
    int frozen_routes = 0;
    std::uint64_t nodes = 0;
};

struct ImproveResult {
    Verdict verdict = Verdict::Infeasible;
    std::optional<FoldingMap> best;
    Rat best_scale;
    std::vector<RoundInfo> trace;
};

// Alternates discrete search and position refinement: solve coarsely, then
// per round freeze a random keep_fraction of the incumbent's placements and
// budget-compliant routes, re-solve the rest one grid step below the best
// scale, and refine. The reported best only ever decreases; candidates
// within (1 + worsen_tolerance) of it may replace the incumbent that seeds
// the next round's freeze.
ImproveResult improve(const MetricGraph& src, const MetricGraph& dst, const ImproveConfig& cfg);

} // namespace iso
