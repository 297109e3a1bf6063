#include "iso/improve.hpp"

#include "iso/bounds.hpp"
#include "iso/lp_refine.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace iso {

namespace {

bool walk_on_grid(const Walk& w, const Subdivision& sub) {
    for (const auto& p : w)
        if (!sub.locate(p)) return false;
    return true;
}

// Number of items frozen from a pool of n at the configured fraction.
int freeze_count(const Rat& fraction, int n) {
    Rat f = fraction * n;
    return static_cast<int>(rational_floor(f).get_num().get_si());
}

} // namespace

ImproveResult improve(const MetricGraph& src, const MetricGraph& dst, const ImproveConfig& cfg) {
    ImproveResult res;

    SearchConfig coarse;
    coarse.q = cfg.coarse_q;
    coarse.scale_max = cfg.scale_max;
    coarse.time_budget_seconds = cfg.round_time_budget_seconds;
    MinimizeResult start = minimize(src, dst, coarse);
    if (start.verdict != Verdict::Feasible) {
        res.verdict = start.verdict;
        return res;
    }

    FoldingMap current = *start.certificate;
    {
        RefineResult r = refine(src, dst, current);
        if (r.status == LpStatus::Optimal && r.scale <= current.scale) current = r.certificate;
    }
    res.verdict = Verdict::Feasible;
    res.best = current;
    res.best_scale = current.scale;
    {
        // Round 0 records the refined coarse starting point.
        RoundInfo info;
        info.round = 0;
        info.target = *start.alpha;
        info.verdict = Verdict::Feasible;
        info.refined = current.scale;
        info.new_best = true;
        res.trace.push_back(std::move(info));
    }

    Rat lb = improved_lower(src, dst).value;
    std::mt19937_64 rng(cfg.seed);
    Subdivision round_sub = subdivide(dst, cfg.round_q);

    for (int round = 1; round <= cfg.rounds; ++round) {
        // One grid step below the current best.
        auto candidates = grid_scales(src, dst, cfg.round_q, lb, res.best_scale);
        std::optional<Rat> target;
        for (const auto& t : candidates)
            if (t < res.best_scale && (!target || t > *target)) target = t;
        if (!target) break;

        RoundInfo info;
        info.round = round;
        info.target = *target;

        FrozenParts frozen;
        std::vector<int> verts(src.vertex_count());
        std::iota(verts.begin(), verts.end(), 0);
        std::shuffle(verts.begin(), verts.end(), rng);
        int nv = freeze_count(cfg.keep_fraction, src.vertex_count());
        for (int i = 0; i < nv; ++i) {
            const Point& p = current.placement.at(verts[i]);
            if (round_sub.locate(p)) frozen.placements[verts[i]] = p;
        }
        std::vector<int> edges(src.edge_count());
        std::iota(edges.begin(), edges.end(), 0);
        std::shuffle(edges.begin(), edges.end(), rng);
        int ne = freeze_count(cfg.keep_fraction, src.edge_count());
        for (int i = 0; i < ne; ++i) {
            int e = edges[i];
            const Walk& w = current.routes.at(e);
            // Only routes already within the tighter budget, with both
            // endpoints frozen, stay fixed.
            if (walk_length(w, dst) > *target * src.edge(e).length) continue;
            if (!walk_on_grid(w, round_sub)) continue;
            if (!frozen.placements.count(src.edge(e).u) || !frozen.placements.count(src.edge(e).v))
                continue;
            frozen.routes[e] = w;
        }
        info.frozen_placements = static_cast<int>(frozen.placements.size());
        info.frozen_routes = static_cast<int>(frozen.routes.size());

        SearchConfig sc;
        sc.q = cfg.round_q;
        sc.scale_max = cfg.scale_max;
        sc.time_budget_seconds = cfg.round_time_budget_seconds;
        DecideResult dr = decide(src, dst, *target, sc, &frozen);
        info.verdict = dr.verdict;
        info.nodes = dr.nodes;

        if (dr.verdict == Verdict::Timeout) res.verdict = Verdict::Timeout;
        if (dr.verdict == Verdict::Feasible) {
            FoldingMap cand = *dr.certificate;
            RefineResult r = refine(src, dst, cand);
            if (r.status == LpStatus::Optimal && r.scale <= cand.scale) cand = r.certificate;
            info.refined = cand.scale;
            if (cand.scale < res.best_scale) {
                res.best = cand;
                res.best_scale = cand.scale;
                info.new_best = true;
            }
            if (cand.scale <= res.best_scale * (Rat(1) + cfg.worsen_tolerance))
                current = std::move(cand);
        } else if (dr.verdict == Verdict::Infeasible && info.frozen_placements == 0 &&
                   info.frozen_routes == 0) {
            // Unconstrained and infeasible at this grid scale: every lower
            // grid scale is infeasible too.
            res.trace.push_back(std::move(info));
            break;
        }
        res.trace.push_back(std::move(info));
    }
    return res;
}

} // namespace iso
