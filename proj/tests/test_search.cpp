#include "doctest.h"

#include "iso/bounds.hpp"
#include "iso/catalog.hpp"
#include "iso/covering.hpp"
#include "iso/postman.hpp"
#include "iso/search.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace iso;

namespace {

// Independent brute-force decision: enumerate placements; per source edge
// all budget-feasible trails over derived arcs; DP over coverage masks.
struct Arcs {
    const MetricGraph& g;
    std::vector<std::pair<int, int>> ends; // arc -> (from, to)
    explicit Arcs(const MetricGraph& gg) : g(gg) {
        for (int e = 0; e < g.edge_count(); ++e) {
            ends.push_back({g.edge(e).u, g.edge(e).v});
            ends.push_back({g.edge(e).v, g.edge(e).u});
        }
    }
};

void trails(const Arcs& A, int cur, int goal, const Rat& remaining, unsigned used,
            unsigned covermask, std::set<unsigned>& masks) {
    if (cur == goal) masks.insert(covermask);
    for (int arc = 0; arc < (int)A.ends.size(); ++arc) {
        if (used & (1u << arc)) continue;
        if (A.ends[arc].first != cur) continue;
        Rat len = A.g.edge(arc / 2).length;
        if (len > remaining) continue;
        trails(A, A.ends[arc].second, goal, remaining - len, used | (1u << arc),
               covermask | (1u << (arc / 2)), masks);
    }
}

bool brute_decide(const MetricGraph& src, const MetricGraph& dst, const Rat& alpha, unsigned q) {
    if (alpha <= 0) return false;
    Subdivision sub = subdivide(dst, q);
    const MetricGraph& D = sub.derived();
    REQUIRE(D.edge_count() <= 20);
    Arcs A(D);
    unsigned full = (1u << D.edge_count()) - 1;
    int nv = src.vertex_count(), nd = D.vertex_count();
    std::vector<int> place(nv, 0);
    for (;;) {
        std::set<unsigned> reach{0u};
        bool ok_all = true;
        for (int e = 0; e < src.edge_count() && ok_all; ++e) {
            std::set<unsigned> masks;
            trails(A, place[src.edge(e).u], place[src.edge(e).v], alpha * src.edge(e).length, 0,
                   0, masks);
            if (masks.empty()) {
                ok_all = false;
                break;
            }
            std::set<unsigned> next;
            for (unsigned r : reach)
                for (unsigned m : masks) next.insert(r | m);
            reach = std::move(next);
        }
        if (ok_all)
            for (unsigned r : reach)
                if (r == full) return true;
        int i = 0;
        while (i < nv && ++place[i] == nd) place[i++] = 0;
        if (i == nv) return false;
    }
}

MetricGraph random_graph(std::mt19937_64& rng, int max_edges, bool rational_len) {
    for (;;) {
        MetricGraph g;
        std::uniform_int_distribution<int> nvd(2, std::min(max_edges + 1, 5));
        int nv = nvd(rng);
        for (int i = 0; i < nv; ++i) g.add_vertex("v" + std::to_string(i));
        std::uniform_int_distribution<int> ned(nv - 1, max_edges);
        int ne = ned(rng);
        std::uniform_int_distribution<int> vd(0, nv - 1), ld(1, 3);
        int guard = 0;
        while (g.edge_count() < ne && guard++ < 50) {
            int a = vd(rng), b = vd(rng);
            if (a == b) continue;
            Rat len = rational_len ? rat(ld(rng), ld(rng)) : Rat(1);
            g.add_edge(g.label(a), g.label(b), len);
        }
        if (g.edge_count() >= 1 && g.connected()) return g;
    }
}

} // namespace

TEST_CASE("grid search agrees with a brute-force oracle on random instances") {
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 40; ++t) {
        MetricGraph src = random_graph(rng, 4, t % 3 == 0);
        MetricGraph dst = random_graph(rng, t % 2 ? 5 : 4, t % 4 == 0);
        for (unsigned q : {1u, 2u}) {
            if (subdivide(dst, q).derived().edge_count() > 14) continue;
            Rat lb = improved_lower(src, dst).value;
            std::vector<Rat> alphas = {lb, Rat(lb + rat(1, 2)), Rat(lb * 2), Rat(1), rat(3, 2)};
            for (const Rat& alpha : alphas) {
                CAPTURE(t);
                CAPTURE(q);
                CAPTURE(format_rational(alpha));
                bool oracle = brute_decide(src, dst, alpha, q);
                SearchConfig cfg;
                cfg.q = q;
                cfg.time_budget_seconds = 60;
                DecideResult r = decide(src, dst, alpha, cfg);
                REQUIRE(r.verdict != Verdict::Timeout);
                CHECK((r.verdict == Verdict::Feasible) == oracle);
                if (r.verdict == Verdict::Feasible) {
                    REQUIRE(r.certificate.has_value());
                    VerifyReport rep = verify(src, dst, *r.certificate);
                    CHECK(rep.accepted);
                    CHECK(r.certificate->scale == alpha);
                }
            }
        }
    }
}

TEST_CASE("decide is monotone in the scale on a fixed grid") {
    MetricGraph src = platonic(Platonic::Tetrahedron);
    MetricGraph dst = parse_graph_string("v a\nv b\nv c\ne a b\ne b c\ne a c\n");
    SearchConfig cfg;
    cfg.q = 1;
    bool seen_feasible = false;
    for (const Rat& alpha : {rat(1, 4), rat(1, 2), Rat(1), rat(3, 2), Rat(2)}) {
        DecideResult r = decide(src, dst, alpha, cfg);
        REQUIRE(r.verdict != Verdict::Timeout);
        if (seen_feasible) CHECK(r.verdict == Verdict::Feasible);
        if (r.verdict == Verdict::Feasible) seen_feasible = true;
    }
    CHECK(seen_feasible);
}

TEST_CASE("minimize returns the smallest grid-feasible scale") {
    // triangle onto a single unit edge: the closed covering tour has length
    // 2, so a cycle of perimeter 3 folds at 2/3 and no less
    MetricGraph tri = parse_graph_string("v a\nv b\nv c\ne a b\ne b c\ne a c\n");
    MetricGraph edge = parse_graph_string("v x\nv y\ne x y\n");
    SearchConfig cfg;
    cfg.q = 3;
    MinimizeResult r = minimize(tri, edge, cfg);
    REQUIRE(r.verdict == Verdict::Feasible);
    CHECK(*r.alpha == rat(2, 3));
    CHECK(*r.alpha == optimal_scale_cycle_source(Rat(3), edge));
    CHECK(verify(tri, edge, *r.certificate).accepted);
    // scales are tried in ascending order
    for (size_t i = 1; i < r.scales_tried.size(); ++i)
        CHECK(r.scales_tried[i - 1] < r.scales_tried[i]);
}

TEST_CASE("identity instances minimize to scale 1") {
    for (auto p : {Platonic::Tetrahedron, Platonic::Octahedron}) {
        MetricGraph g = platonic(p);
        SearchConfig cfg;
        cfg.q = 1;
        MinimizeResult r = minimize(g, g, cfg);
        REQUIRE(r.verdict == Verdict::Feasible);
        CHECK(*r.alpha == Rat(1));
    }
}

TEST_CASE("bound pruning reports infeasibility without search") {
    MetricGraph src = platonic(Platonic::Tetrahedron);
    MetricGraph dst = platonic(Platonic::Cube);
    SearchConfig cfg;
    cfg.q = 1;
    DecideResult r = decide(src, dst, Rat(2), cfg); // below the 7/3 lower bound
    CHECK(r.verdict == Verdict::Infeasible);
    CHECK(r.bound_pruned);
    CHECK(r.nodes == 0);
}

TEST_CASE("grid scales enumerate budget breakpoints in range") {
    MetricGraph src = parse_graph_string("v a\nv b\ne a b 2\n");
    MetricGraph dst = parse_graph_string("v x\nv y\ne x y\n");
    // q=2 granule is 1/2; budgets 2*alpha cross multiples of 1/2 at alpha = k/4
    std::vector<Rat> sc = grid_scales(src, dst, 2, Rat(1), Rat(2));
    REQUIRE(!sc.empty());
    CHECK(sc.front() >= Rat(1));
    CHECK(sc.back() <= Rat(2));
    for (const Rat& s : sc) {
        Rat scaled = s * 2 / rat(1, 2); // budget in granule units
        CHECK(scaled.get_den() == 1);
    }
    for (size_t i = 1; i < sc.size(); ++i) CHECK(sc[i - 1] < sc[i]);
}

TEST_CASE("frozen placements and routes are honored") {
    MetricGraph src = parse_graph_string("v a\nv b\nv c\ne a b\ne b c\n");
    MetricGraph dst = parse_graph_string("v x\nv y\ne x y\n");
    SearchConfig cfg;
    cfg.q = 1;
    FrozenParts fr;
    fr.placements[*src.find_vertex("a")] = Point::at_vertex(0);
    fr.placements[*src.find_vertex("c")] = Point::at_vertex(0);
    DecideResult r = decide(src, dst, Rat(1), cfg, &fr);
    REQUIRE(r.verdict == Verdict::Feasible);
    CHECK(r.certificate->placement.at(*src.find_vertex("a")) == Point::at_vertex(0));
    CHECK(r.certificate->placement.at(*src.find_vertex("c")) == Point::at_vertex(0));
    CHECK(verify(src, dst, *r.certificate).accepted);

    // freezing an impossible placement makes the instance infeasible
    fr.placements[*src.find_vertex("b")] = Point::at_vertex(0);
    DecideResult r2 = decide(src, dst, Rat(1), cfg, &fr);
    CHECK(r2.verdict == Verdict::Infeasible);
}

TEST_CASE("search results are deterministic") {
    MetricGraph src = platonic(Platonic::Cube);
    MetricGraph dst = platonic(Platonic::Tetrahedron);
    SearchConfig cfg;
    cfg.q = 1;
    DecideResult a = decide(src, dst, Rat(1), cfg);
    DecideResult b = decide(src, dst, Rat(1), cfg);
    REQUIRE(a.verdict == b.verdict);
    REQUIRE(a.verdict == Verdict::Feasible);
    std::ostringstream sa, sb;
    write_certificate(sa, *a.certificate, src, dst);
    write_certificate(sb, *b.certificate, src, dst);
    CHECK(sa.str() == sb.str());
    CHECK(a.nodes == b.nodes);
}
