#include "iso/search.hpp"

#include "iso/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace iso {

namespace {

Rat chain_offset(const Subdivision& sub, int base_edge, size_t pos) {
    const auto& chain = sub.chain(base_edge);
    if (pos == 0) return Rat(0);
    if (pos + 1 == chain.size()) return Rat(1);
    return sub.vertex_point(chain[pos]).offset;
}

std::optional<size_t> chain_position(const Subdivision& sub, int base_edge, const Rat& offset) {
    const auto& chain = sub.chain(base_edge);
    for (size_t j = 0; j < chain.size(); ++j)
        if (chain_offset(sub, base_edge, j) == offset) return j;
    return std::nullopt;
}

} // namespace

std::optional<std::vector<int>> walk_to_derived(const Walk& w, const Subdivision& sub) {
    if (w.empty()) return std::nullopt;
    auto start = sub.locate(w.front());
    if (!start) return std::nullopt;
    std::vector<int> seq{*start};
    const MetricGraph& base = sub.base();
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == w[i + 1]) continue;
        std::optional<WalkSegment> seg;
        try {
            seg = walk_step(w[i], w[i + 1], base);
        } catch (const BrokenWalk&) {
            return std::nullopt;
        }
        if (!seg) continue;
        // Directed offsets along the pinned edge.
        auto off_of = [&](const Point& p) -> Rat {
            if (!p.is_vertex()) return p.offset;
            return base.edge(seg->edge).u == p.vertex ? Rat(0) : Rat(1);
        };
        Rat o1 = off_of(w[i]), o2 = off_of(w[i + 1]);
        auto p1 = chain_position(sub, seg->edge, o1);
        auto p2 = chain_position(sub, seg->edge, o2);
        if (!p1 || !p2) return std::nullopt;
        const auto& chain = sub.chain(seg->edge);
        size_t j = *p1;
        while (j != *p2) {
            j = o1 < o2 ? j + 1 : j - 1;
            seq.push_back(chain[j]);
        }
    }
    return seq;
}

std::vector<Rat> grid_scales(const MetricGraph& src, const MetricGraph& dst, unsigned q,
                             const Rat& lo, const Rat& hi) {
    Rat granule(0);
    for (const auto& e : dst.edges()) granule = rational_gcd(granule, e.length);
    granule /= static_cast<long>(q);
    std::set<Rat> out;
    for (const auto& e : src.edges()) {
        Rat step = granule / e.length;
        Rat a = ceil_to_multiple(lo, step);
        if (a < step) a = step;
        for (; a <= hi; a += step) {
            out.insert(a);
            if (out.size() > 20000) throw std::runtime_error("grid scale candidate set too large");
        }
    }
    return std::vector<Rat>(out.begin(), out.end());
}

namespace {

class Searcher {
public:
    Searcher(const MetricGraph& src, const MetricGraph& dst, Rat alpha, const SearchConfig& cfg)
        : src_(src),
          alpha_(std::move(alpha)),
          sub_(subdivide(dst, cfg.q)),
          derived_(sub_.derived()),
          dist_(derived_),
          cfg_(cfg) {
        const int na = derived_.edge_count() * 2;
        arc_to_.resize(na);
        arc_from_.resize(na);
        out_arcs_.assign(derived_.vertex_count(), {});
        for (int de = 0; de < derived_.edge_count(); ++de) {
            const auto& ed = derived_.edge(de);
            arc_from_[2 * de] = ed.u;
            arc_to_[2 * de] = ed.v;
            arc_from_[2 * de + 1] = ed.v;
            arc_to_[2 * de + 1] = ed.u;
            out_arcs_[ed.u].push_back(2 * de);
            out_arcs_[ed.v].push_back(2 * de + 1);
        }
        budget_.reserve(src.edge_count());
        for (const auto& e : src.edges()) budget_.push_back(alpha_ * e.length);

        placement_.assign(src.vertex_count(), -1);
        cover_.assign(derived_.edge_count(), 0);
        uncovered_ = derived_.perimeter();
        route_arcs_.assign(src.edge_count(), {});
        routed_.assign(src.edge_count(), 0);
        arc_used_.assign(na, 0);

        cand_order_.resize(derived_.vertex_count());
        for (int v = 0; v < derived_.vertex_count(); ++v) cand_order_[v] = v;
        std::stable_sort(cand_order_.begin(), cand_order_.end(), [&](int a, int b) {
            return derived_.degree(a) > derived_.degree(b);
        });
    }

    // Returns false when the frozen parts are not grid-representable or
    // exceed their budgets.
    bool apply_frozen(const FrozenParts& frozen) {
        for (const auto& [u, p] : frozen.placements) {
            auto dv = sub_.locate(p);
            if (!dv) return false;
            placement_[u] = *dv;
        }
        for (const auto& [e, w] : frozen.routes) {
            auto seq = walk_to_derived(w, sub_);
            if (!seq) return false;
            const auto& se = src_.edge(e);
            if (placement_[se.u] != seq->front() || placement_[se.v] != seq->back()) return false;
            Rat len(0);
            std::vector<int> arcs;
            std::vector<char> used(arc_to_.size(), 0);
            for (size_t i = 0; i + 1 < seq->size(); ++i) {
                int arc = find_arc((*seq)[i], (*seq)[i + 1]);
                if (arc < 0 || used[arc]) return false;
                used[arc] = 1;
                arcs.push_back(arc);
                len += arc_length(arc);
            }
            if (len > budget_[e]) return false;
            for (int arc : arcs) cover_arc(arc);
            route_arcs_[e] = std::move(arcs);
            routed_[e] = 1;
        }
        return true;
    }

    DecideResult run() {
        DecideResult result;
        build_order();
        future_budget_ = 0;
        for (int e = 0; e < src_.edge_count(); ++e)
            if (!routed_[e]) future_budget_ += budget_[e];
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg_.time_budget_seconds));

        bool found = false;
        if (src_.edge_count() == 0) {
            found = derived_.edge_count() == 0;
            if (found && src_.vertex_count() > 0 && placement_[0] < 0) placement_[0] = 0;
        } else {
            found = route_step(0);
        }
        result.nodes = nodes_;
        if (found) {
            result.verdict = Verdict::Feasible;
            result.certificate = build_certificate();
        } else if (timed_out_) {
            result.verdict = Verdict::Timeout;
        } else {
            result.verdict = Verdict::Infeasible;
        }
        return result;
    }

private:
    struct Step {
        int edge;
        int anchor;  // source endpoint placed when this edge is reached
        int other;   // the opposite source endpoint
        bool reversed; // anchor is the edge's v endpoint
        bool fresh;    // neither endpoint placed yet (first edge)
    };

    void build_order() {
        std::vector<char> placed(src_.vertex_count(), 0);
        for (int v = 0; v < src_.vertex_count(); ++v)
            if (placement_[v] >= 0) placed[v] = 1;
        std::vector<char> done = routed_;
        for (int e = 0; e < src_.edge_count(); ++e)
            if (done[e]) {
                placed[src_.edge(e).u] = 1;
                placed[src_.edge(e).v] = 1;
            }

        // Without frozen parts, seed at a maximum-degree source vertex.
        bool any_placed = std::any_of(placed.begin(), placed.end(), [](char c) { return c; });
        int seed_vertex = 0;
        for (int v = 1; v < src_.vertex_count(); ++v)
            if (src_.degree(v) > src_.degree(seed_vertex)) seed_vertex = v;

        int remaining = 0;
        for (int e = 0; e < src_.edge_count(); ++e)
            if (!done[e]) ++remaining;
        while (remaining > 0) {
            int best = -1;
            bool best_anchored = false;
            for (int e = 0; e < src_.edge_count(); ++e) {
                if (done[e]) continue;
                const auto& ed = src_.edge(e);
                bool anchored = placed[ed.u] || placed[ed.v] ||
                                (!any_placed && (ed.u == seed_vertex || ed.v == seed_vertex));
                if (best < 0 || (anchored && !best_anchored) ||
                    (anchored == best_anchored && src_.edge(e).length > src_.edge(best).length)) {
                    best = e;
                    best_anchored = anchored;
                }
            }
            const auto& ed = src_.edge(best);
            Step s;
            s.edge = best;
            if (placed[ed.u]) {
                s.anchor = ed.u;
                s.other = ed.v;
                s.reversed = false;
                s.fresh = false;
            } else if (placed[ed.v]) {
                s.anchor = ed.v;
                s.other = ed.u;
                s.reversed = true;
                s.fresh = false;
            } else {
                s.anchor = (ed.u == seed_vertex || ed.v == seed_vertex)
                               ? seed_vertex
                               : ed.u;
                s.other = ed.u == s.anchor ? ed.v : ed.u;
                s.reversed = s.anchor == ed.v;
                s.fresh = true;
            }
            placed[ed.u] = placed[ed.v] = 1;
            any_placed = true;
            done[best] = 1;
            order_.push_back(s);
            --remaining;
        }
    }

    Rat arc_length(int arc) const { return derived_.edge(arc / 2).length; }

    int find_arc(int from, int to) const {
        for (int arc : out_arcs_[from])
            if (arc_to_[arc] == to) return arc;
        return -1;
    }

    void cover_arc(int arc) {
        int de = arc / 2;
        if (cover_[de]++ == 0) uncovered_ -= derived_.edge(de).length;
    }

    void uncover_arc(int arc) {
        int de = arc / 2;
        if (--cover_[de] == 0) uncovered_ += derived_.edge(de).length;
    }

    bool out_of_time() {
        if (timed_out_) return true;
        if ((nodes_ & 1023) == 0) {
            if (std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
            if (cfg_.node_limit && nodes_ > cfg_.node_limit) timed_out_ = true;
        }
        return timed_out_;
    }

    bool route_step(size_t idx) {
        if (idx == order_.size()) return uncovered_ == 0;
        const Step& s = order_[idx];
        future_budget_ -= budget_[s.edge];
        bool found = false;
        if (s.fresh) {
            for (int dv : cand_order_) {
                placement_[s.anchor] = dv;
                if (extend(idx, dv, budget_[s.edge])) {
                    found = true;
                    break;
                }
                placement_[s.anchor] = -1;
                if (timed_out_) break;
            }
            if (!found && !timed_out_) placement_[s.anchor] = -1;
        } else {
            found = extend(idx, placement_[s.anchor], budget_[s.edge]);
        }
        if (!found) future_budget_ += budget_[s.edge];
        return found;
    }

    // Placing source vertex `sv` at `dv`: every pending edge between sv and
    // an already placed vertex must still be routable within its budget.
    bool placement_viable(int sv, int dv) const {
        for (int e : src_.incidence()[sv]) {
            if (routed_[e]) continue;
            const auto& ed = src_.edge(e);
            int other = ed.u == sv ? ed.v : ed.u;
            if (other == sv) continue;
            int po = placement_[other];
            if (po < 0) continue;
            const auto& d = dist_.dist(dv, po);
            if (!d || *d > budget_[e]) return false;
        }
        return true;
    }

    bool extend(size_t idx, int cur, Rat remaining) {
        ++nodes_;
        if (out_of_time()) return false;
        if (uncovered_ > remaining + future_budget_) return false;

        const Step& s = order_[idx];
        int target = placement_[s.other];

        // Coverage-deficit-first: arcs over uncovered derived edges, then
        // the stop option, then already-covered arcs.
        for (int phase = 0; phase < 3; ++phase) {
            if (phase == 1) {
                bool self_edge = s.other == s.anchor && !s.fresh;
                bool may_stop = self_edge ? placement_[s.other] == cur
                               : target < 0 ? true
                                            : target == cur;
                if (may_stop) {
                    bool placed_here = false;
                    if (target < 0 && !self_edge) {
                        if (!placement_viable(s.other, cur)) continue;
                        placement_[s.other] = cur;
                        placed_here = true;
                    }
                    finish_route(s);
                    if (route_step(idx + 1)) return true;
                    unfinish_route(s);
                    if (placed_here) placement_[s.other] = -1;
                    if (timed_out_) return false;
                }
                continue;
            }
            for (int arc : out_arcs_[cur]) {
                if (arc_used_[arc]) continue;
                bool covered = cover_[arc / 2] > 0;
                if ((phase == 0) == covered) continue;
                Rat len = arc_length(arc);
                if (len > remaining) continue;
                int to = arc_to_[arc];
                if (target >= 0) {
                    const auto& d = dist_.dist(to, target);
                    if (!d || *d > remaining - len) continue;
                }
                arc_used_[arc] = 1;
                cover_arc(arc);
                cur_route_.push_back(arc);
                if (extend(idx, to, remaining - len)) return true;
                cur_route_.pop_back();
                uncover_arc(arc);
                arc_used_[arc] = 0;
                if (timed_out_) return false;
            }
        }
        return false;
    }

    void finish_route(const Step& s) {
        std::vector<int> arcs = cur_route_;
        if (s.reversed) {
            std::reverse(arcs.begin(), arcs.end());
            for (int& a : arcs) a ^= 1;
        }
        route_arcs_[s.edge] = std::move(arcs);
        routed_[s.edge] = 1;
        saved_routes_.push_back(cur_route_);
        // The trail restriction is per route; later routes may traverse
        // the same directed arcs again.
        for (int arc : cur_route_) arc_used_[arc] = 0;
        cur_route_.clear();
    }

    void unfinish_route(const Step& s) {
        routed_[s.edge] = 0;
        route_arcs_[s.edge].clear();
        cur_route_ = saved_routes_.back();
        saved_routes_.pop_back();
        for (int arc : cur_route_) arc_used_[arc] = 1;
    }

    FoldingMap build_certificate() const {
        FoldingMap fm;
        fm.scale = alpha_;
        for (int v = 0; v < src_.vertex_count(); ++v) {
            int dv = placement_[v] >= 0 ? placement_[v] : 0;
            fm.placement[v] = sub_.vertex_point(dv);
        }
        for (int e = 0; e < src_.edge_count(); ++e) {
            const auto& se = src_.edge(e);
            Walk w{sub_.vertex_point(placement_[se.u])};
            for (int arc : route_arcs_[e]) {
                Point next = sub_.vertex_point(arc_to_[arc]);
                if (w.back().is_vertex() && next.is_vertex()) {
                    // Pin the edge through its midpoint so that parallel
                    // target edges stay distinguishable in the certificate.
                    const auto& seg = sub_.segment(arc / 2);
                    w.push_back(Point::interior(seg.base_edge, (seg.lo + seg.hi) / 2));
                }
                w.push_back(next);
            }
            fm.routes[e] = std::move(w);
        }
        return fm;
    }

    const MetricGraph& src_;
    Rat alpha_;
    Subdivision sub_;
    const MetricGraph& derived_;
    DistanceTable dist_;
    const SearchConfig& cfg_;

    std::vector<int> arc_to_, arc_from_;
    std::vector<std::vector<int>> out_arcs_;
    std::vector<Rat> budget_;
    std::vector<Step> order_;

    std::vector<int> placement_;
    std::vector<int> cover_;
    Rat uncovered_;
    Rat future_budget_;
    std::vector<std::vector<int>> route_arcs_;
    std::vector<char> routed_;
    std::vector<char> arc_used_;
    std::vector<int> cur_route_;
    std::vector<std::vector<int>> saved_routes_;
    std::vector<int> cand_order_;

    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point deadline_;
    bool timed_out_ = false;
};

} // namespace

DecideResult decide(const MetricGraph& src, const MetricGraph& dst, const Rat& alpha,
                    const SearchConfig& cfg, const FrozenParts* frozen) {
    if (cfg.q == 0) throw InvalidGranularity("granularity must be >= 1");
    auto vs = validate(src);
    auto vd = validate(dst);
    if (!vs.valid || !vd.valid) throw std::invalid_argument("decide requires valid connected graphs");

    DecideResult result;
    if (alpha <= 0) return result;
    if (dst.edge_count() == 0 && src.edge_count() > 0) return result;

    if (src.edge_count() > 0 && dst.edge_count() > 0) {
        auto lb = improved_lower(src, dst);
        if (alpha < lb.value) {
            result.bound_pruned = true;
            return result;
        }
    }

    Searcher searcher(src, dst, alpha, cfg);
    if (frozen && !searcher.apply_frozen(*frozen)) return result;
    return searcher.run();
}

MinimizeResult minimize(const MetricGraph& src, const MetricGraph& dst, const SearchConfig& cfg) {
    MinimizeResult result;
    Rat hi = cfg.scale_max ? *cfg.scale_max : Rat(dst.edge_count());
    Rat lo(0);
    if (src.edge_count() > 0 && dst.edge_count() > 0) lo = improved_lower(src, dst).value;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg.time_budget_seconds));
    for (const Rat& alpha : grid_scales(src, dst, cfg.q, lo, hi)) {
        SearchConfig step_cfg = cfg;
        step_cfg.time_budget_seconds = std::max(
            0.0, std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count());
        auto d = decide(src, dst, alpha, step_cfg);
        result.scales_tried.push_back(alpha);
        if (d.verdict == Verdict::Feasible) {
            result.verdict = Verdict::Feasible;
            result.alpha = alpha;
            result.certificate = std::move(d.certificate);
            return result;
        }
        if (d.verdict == Verdict::Timeout) {
            result.verdict = Verdict::Timeout;
            return result;
        }
    }
    result.verdict = Verdict::Infeasible;
    return result;
}

} // namespace iso
