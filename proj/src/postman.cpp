#include "iso/postman.hpp"

#include <algorithm>

namespace iso {

namespace {

int cheapest_edge_between(const MetricGraph& g, int a, int b) {
    int best = -1;
    for (int e : g.edges_between(a, b))
        if (best < 0 || g.edge(e).length < g.edge(best).length) best = e;
    return best;
}

} // namespace

TJoinResult min_t_join(const MetricGraph& g, const std::vector<int>& T,
                       const DistanceTable* dist) {
    if (T.size() % 2 != 0) throw ParityError("T-join requires an even vertex set");
    if (T.size() > 20) throw std::invalid_argument("T-join DP capped at |T| <= 20");
    if (T.empty()) return TJoinResult{Rat(0), {}};

    std::optional<DistanceTable> local;
    if (!dist) {
        local.emplace(g);
        dist = &*local;
    }

    const int t = static_cast<int>(T.size());
    const unsigned full = (1u << t) - 1;
    std::vector<std::optional<Rat>> dp(full + 1);
    std::vector<int> choice(full + 1, -1);
    dp[0] = Rat(0);
    for (unsigned mask = 1; mask <= full; ++mask) {
        int bits = __builtin_popcount(mask);
        if (bits % 2 != 0) continue;
        int i = __builtin_ctz(mask);
        for (int j = i + 1; j < t; ++j) {
            if (!(mask & (1u << j))) continue;
            unsigned rest = mask & ~(1u << i) & ~(1u << j);
            if (!dp[rest]) continue;
            const auto& dij = dist->dist(T[i], T[j]);
            if (!dij) continue;
            Rat cand = *dp[rest] + *dij;
            if (!dp[mask] || cand < *dp[mask]) {
                dp[mask] = cand;
                choice[mask] = j;
            }
        }
    }
    if (!dp[full]) throw std::invalid_argument("T-join infeasible: T vertices not mutually reachable");

    TJoinResult result;
    result.length = *dp[full];
    unsigned mask = full;
    while (mask) {
        int i = __builtin_ctz(mask);
        int j = choice[mask];
        auto path = dist->path(T[i], T[j]);
        for (size_t k = 0; k + 1 < path.size(); ++k)
            result.edges.push_back(cheapest_edge_between(g, path[k], path[k + 1]));
        mask &= ~(1u << i) & ~(1u << j);
    }
    return result;
}

Rat postman_closed(const MetricGraph& g) {
    std::vector<int> odd;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 == 1) odd.push_back(v);
    DistanceTable dist(g);
    return g.perimeter() + min_t_join(g, odd, &dist).length;
}

Rat postman_open(const MetricGraph& g) {
    std::vector<int> odd;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 == 1) odd.push_back(v);
    DistanceTable dist(g);
    std::optional<Rat> best;
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v = u; v < g.vertex_count(); ++v) {
            // Odd set of the walk's edge multiset must be odd(g) XOR {u,v};
            // u == v degenerates to the closed-walk case.
            std::vector<int> T;
            if (u == v) {
                T = odd;
            } else {
                for (int w : odd)
                    if (w != u && w != v) T.push_back(w);
                if (std::find(odd.begin(), odd.end(), u) == odd.end()) T.push_back(u);
                if (std::find(odd.begin(), odd.end(), v) == odd.end()) T.push_back(v);
            }
            if (T.size() % 2 != 0) continue;
            if (T.size() > 20) continue;
            Rat cand = g.perimeter() + min_t_join(g, T, &dist).length;
            if (!best || cand < *best) best = cand;
        }
    }
    return *best;
}

Rat optimal_scale_cycle_source(const Rat& src_cycle_length, const MetricGraph& dst) {
    if (src_cycle_length <= 0) throw std::invalid_argument("source cycle length must be positive");
    return postman_closed(dst) / src_cycle_length;
}

} // namespace iso
