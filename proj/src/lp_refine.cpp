#include "iso/lp_refine.hpp"

#include "iso/search.hpp"

#include <algorithm>

namespace iso {

namespace {

int find_arc_between(const MetricGraph& derived, int from, int to, std::vector<char>* used) {
    for (int de = 0; de < derived.edge_count(); ++de) {
        const auto& ed = derived.edge(de);
        int arc = -1;
        if (ed.u == from && ed.v == to) arc = 2 * de;
        if (ed.v == from && ed.u == to) arc = 2 * de + 1;
        if (arc >= 0 && (!used || !(*used)[arc])) return arc;
    }
    return -1;
}

} // namespace

Skeleton skeleton_from_certificate(const MetricGraph& src, const MetricGraph& dst,
                                   const FoldingMap& fm) {
    std::vector<std::vector<Rat>> offsets(dst.edge_count());
    auto note = [&](const Point& p) {
        if (!p.is_vertex()) offsets[p.edge].push_back(p.offset);
    };
    for (const auto& [u, p] : fm.placement) note(p);
    for (const auto& [e, w] : fm.routes)
        for (const auto& p : w) note(p);

    Skeleton sk{Subdivision(dst, std::move(offsets)), Rat(0), {}, {}};
    sk.scale_cap = Rat(2 * sk.sub.derived().edge_count() + 1);

    sk.placement.assign(src.vertex_count(), -1);
    for (const auto& [u, p] : fm.placement) {
        auto dv = sk.sub.locate(p);
        if (!dv) throw SkeletonError("placement not on subdivision");
        sk.placement[u] = *dv;
    }
    for (int u = 0; u < src.vertex_count(); ++u)
        if (sk.placement[u] < 0) throw SkeletonError("missing placement");

    sk.arcs.assign(src.edge_count(), {});
    const MetricGraph& derived = sk.sub.derived();
    for (int e = 0; e < src.edge_count(); ++e) {
        auto it = fm.routes.find(e);
        if (it == fm.routes.end()) throw SkeletonError("missing route");
        auto seq = walk_to_derived(it->second, sk.sub);
        if (!seq) throw SkeletonError("route not on subdivision");
        if (seq->front() != sk.placement[src.edge(e).u] ||
            seq->back() != sk.placement[src.edge(e).v])
            throw SkeletonError("route endpoints disagree with placement");
        std::vector<char> used(2 * derived.edge_count(), 0);
        for (size_t i = 0; i + 1 < seq->size(); ++i) {
            if ((*seq)[i] == (*seq)[i + 1]) continue;
            int arc = find_arc_between(derived, (*seq)[i], (*seq)[i + 1], nullptr);
            if (arc < 0) throw SkeletonError("route step not a derived edge");
            if (used[arc]) throw SkeletonError("route uses a directed derived arc twice");
            used[arc] = 1;
            sk.arcs[e].push_back(arc);
        }
    }
    return sk;
}

SkeletonLp build_lp(const MetricGraph& src, const Skeleton& skeleton) {
    const Subdivision& sub = skeleton.sub;
    const MetricGraph& derived = sub.derived();
    const MetricGraph& base = sub.base();

    // Fixed-binary constraints first: degrees and coverage.
    std::vector<char> covered(derived.edge_count(), 0);
    for (int e = 0; e < src.edge_count(); ++e) {
        const auto& arcs = skeleton.arcs[e];
        int at = skeleton.placement[src.edge(e).u];
        for (int arc : arcs) {
            int from = arc % 2 == 0 ? derived.edge(arc / 2).u : derived.edge(arc / 2).v;
            int to = arc % 2 == 0 ? derived.edge(arc / 2).v : derived.edge(arc / 2).u;
            if (from != at) throw SkeletonError("route arcs are not contiguous");
            at = to;
            covered[arc / 2] = 1;
        }
        if (at != skeleton.placement[src.edge(e).v])
            throw SkeletonError("route does not end at the target placement");
    }
    for (int de = 0; de < derived.edge_count(); ++de)
        if (!covered[de]) throw SkeletonError("derived edge left uncovered by the skeleton");

    SkeletonLp out;
    LinearProgram& lp = out.lp;
    out.var_o = lp.add_var("o");
    lp.objective.emplace_back(out.var_o, Rat(1));

    // Position variables for auxiliaries; base endpoints are pinned 0/1.
    out.var_aux.assign(derived.vertex_count(), -1);
    for (int n = base.vertex_count(); n < derived.vertex_count(); ++n)
        out.var_aux[n] = lp.add_var("a_" + std::to_string(n));

    // pos(chain vertex) as a linear term: constant for pinned endpoints.
    auto pos_terms = [&](int base_edge, size_t chain_idx, Rat coeff,
                         LinearProgram::Row& row, Rat& constant) {
        const auto& chain = sub.chain(base_edge);
        if (chain_idx == 0) return;                    // pinned to 0
        if (chain_idx + 1 == chain.size()) {           // pinned to 1
            constant += coeff;
            return;
        }
        row.terms.emplace_back(out.var_aux[chain[chain_idx]], coeff);
    };

    // Chain monotonicity, shared across source edges.
    for (int f = 0; f < base.edge_count(); ++f) {
        const auto& chain = sub.chain(f);
        for (size_t j = 0; j + 1 < chain.size(); ++j) {
            LinearProgram::Row row;
            Rat constant(0);
            pos_terms(f, j + 1, Rat(1), row, constant);
            pos_terms(f, j, Rat(-1), row, constant);
            row.rel = Relation::GreaterEq;
            row.rhs = -constant;
            row.name = "order_f" + std::to_string(f) + "_" + std::to_string(j);
            if (!row.terms.empty()) lp.rows.push_back(std::move(row));
        }
    }

    // Derived edge -> (base edge, chain index of lower endpoint).
    std::vector<std::pair<int, size_t>> edge_chain(derived.edge_count());
    {
        std::vector<int> seen(base.edge_count(), 0);
        for (int de = 0; de < derived.edge_count(); ++de) {
            int f = sub.segment(de).base_edge;
            edge_chain[de] = {f, static_cast<size_t>(seen[f]++)};
        }
    }

    out.var_len.assign(src.edge_count(), {});
    out.var_flow.assign(src.edge_count(), {});
    for (int e = 0; e < src.edge_count(); ++e) {
        const auto& arcs = skeleton.arcs[e];
        LinearProgram::Row budget;
        budget.rel = Relation::LessEq;
        budget.rhs = 0;
        budget.name = "budget_s" + std::to_string(e);
        budget.terms.emplace_back(out.var_o, -src.edge(e).length);

        for (size_t k = 0; k < arcs.size(); ++k) {
            int de = arcs[k] / 2;
            auto [f, j] = edge_chain[de];
            int lv = lp.add_var("l_s" + std::to_string(e) + "_k" + std::to_string(k));
            out.var_len[e].push_back(lv);

            LinearProgram::Row cap; // l <= e = 1
            cap.terms.emplace_back(lv, Rat(1));
            cap.rel = Relation::LessEq;
            cap.rhs = 1;
            cap.name = "lcap_s" + std::to_string(e) + "_k" + std::to_string(k);
            lp.rows.push_back(std::move(cap));

            LinearProgram::Row le; // l - (pos_hi - pos_lo) <= 0
            Rat c1(0);
            le.terms.emplace_back(lv, Rat(1));
            pos_terms(f, j + 1, Rat(-1), le, c1);
            pos_terms(f, j, Rat(1), le, c1);
            le.rel = Relation::LessEq;
            le.rhs = -c1;
            le.name = "lle_s" + std::to_string(e) + "_k" + std::to_string(k);
            lp.rows.push_back(std::move(le));

            LinearProgram::Row ge; // l - (pos_hi - pos_lo) >= e - 1 = 0
            Rat c2(0);
            ge.terms.emplace_back(lv, Rat(1));
            pos_terms(f, j + 1, Rat(-1), ge, c2);
            pos_terms(f, j, Rat(1), ge, c2);
            ge.rel = Relation::GreaterEq;
            ge.rhs = -c2;
            ge.name = "lge_s" + std::to_string(e) + "_k" + std::to_string(k);
            lp.rows.push_back(std::move(ge));

            budget.terms.emplace_back(lv, base.edge(f).length);

            int fv = lp.add_var("f_s" + std::to_string(e) + "_k" + std::to_string(k));
            out.var_flow[e].push_back(fv);
            LinearProgram::Row fcap; // f <= cap * e = cap
            fcap.terms.emplace_back(fv, Rat(1));
            fcap.rel = Relation::LessEq;
            fcap.rhs = skeleton.scale_cap;
            fcap.name = "fcap_s" + std::to_string(e) + "_k" + std::to_string(k);
            lp.rows.push_back(std::move(fcap));
        }
        lp.rows.push_back(std::move(budget));

        // Demand: flow reaches every vertex the route touches.
        std::vector<char> reached(derived.vertex_count(), 0);
        for (int arc : arcs) {
            const auto& ed = derived.edge(arc / 2);
            reached[ed.u] = reached[ed.v] = 1;
        }
        int source_placement = skeleton.placement[src.edge(e).u];
        for (int n = 0; n < derived.vertex_count(); ++n) {
            if (!reached[n]) continue;
            LinearProgram::Row demand;
            demand.rel = Relation::GreaterEq;
            demand.rhs = 1;
            for (size_t k = 0; k < arcs.size(); ++k) {
                int arc = arcs[k];
                const auto& ed = derived.edge(arc / 2);
                int from = arc % 2 == 0 ? ed.u : ed.v;
                int to = arc % 2 == 0 ? ed.v : ed.u;
                if (to == n) demand.terms.emplace_back(out.var_flow[e][k], Rat(1));
                if (from == n) demand.terms.emplace_back(out.var_flow[e][k], Rat(-1));
            }
            if (n == source_placement) demand.rhs -= skeleton.scale_cap;
            demand.name = "demand_s" + std::to_string(e) + "_n" + std::to_string(n);
            lp.rows.push_back(std::move(demand));
        }
    }
    return out;
}

RefineResult refine(const MetricGraph& src, const MetricGraph& dst, const FoldingMap& fm,
                    int max_aux_per_edge) {
    Skeleton sk = skeleton_from_certificate(src, dst, fm);
    if (max_aux_per_edge >= 0) {
        for (int f = 0; f < dst.edge_count(); ++f)
            if (static_cast<int>(sk.sub.chain(f).size()) - 2 > max_aux_per_edge)
                throw SkeletonError("certificate needs more auxiliaries per edge than allowed");
    }
    SkeletonLp slp = build_lp(src, sk);
    LpSolution sol = solve_simplex(slp.lp);

    RefineResult out;
    out.status = sol.status;
    if (sol.status != LpStatus::Optimal) return out;

    const Subdivision& sub = sk.sub;
    const MetricGraph& base = sub.base();
    // Refined base-graph location of each derived vertex.
    auto refined_point = [&](int n) -> Point {
        const Point& p = sub.vertex_point(n);
        if (p.is_vertex()) return p;
        Rat a = sol.x[slp.var_aux[n]];
        if (a == 0) return Point::at_vertex(base.edge(p.edge).u);
        if (a == 1) return Point::at_vertex(base.edge(p.edge).v);
        return Point::interior(p.edge, a);
    };
    auto base_position = [&](int n, int base_edge) -> Rat {
        const Point& p = sub.vertex_point(n);
        if (!p.is_vertex()) return sol.x[slp.var_aux[n]];
        return base.edge(base_edge).u == p.vertex ? Rat(0) : Rat(1);
    };

    FoldingMap refined;
    refined.scale = sol.objective;
    for (int u = 0; u < src.vertex_count(); ++u)
        refined.placement[u] = refined_point(sk.placement[u]);
    const MetricGraph& derived = sub.derived();
    for (int e = 0; e < src.edge_count(); ++e) {
        Walk w{refined_point(sk.placement[src.edge(e).u])};
        for (int arc : sk.arcs[e]) {
            const auto& ed = derived.edge(arc / 2);
            int to = arc % 2 == 0 ? ed.v : ed.u;
            int from = arc % 2 == 0 ? ed.u : ed.v;
            Point next = refined_point(to);
            int f = sub.segment(arc / 2).base_edge;
            if (w.back().is_vertex() && next.is_vertex() && !(w.back() == next)) {
                Rat mid = (base_position(from, f) + base_position(to, f)) / 2;
                w.push_back(Point::interior(f, mid));
            }
            if (!(w.back() == next)) w.push_back(next);
        }
        Point end = refined_point(sk.placement[src.edge(e).v]);
        if (w.size() == 1 || !(w.back() == end)) {
            if (!(w.back() == end)) w.push_back(end);
        }
        refined.routes[e] = std::move(w);
    }
    out.certificate = std::move(refined);
    out.scale = sol.objective;
    return out;
}

} // namespace iso
