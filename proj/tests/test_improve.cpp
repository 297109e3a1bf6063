#include "doctest.h"

#include "iso/catalog.hpp"
#include "iso/covering.hpp"
#include "iso/improve.hpp"

#include <sstream>

using namespace iso;

TEST_CASE("identity instance settles at scale 1 immediately") {
    MetricGraph g = platonic(Platonic::Tetrahedron);
    ImproveConfig cfg;
    cfg.rounds = 3;
    ImproveResult r = improve(g, g, cfg);
    REQUIRE(r.verdict == Verdict::Feasible);
    CHECK(r.best_scale == Rat(1));
    CHECK(verify(g, g, *r.best).accepted);
    // scale 1 meets the lower bound; no round can go below it
    for (const auto& ri : r.trace)
        if (ri.round > 0) CHECK(ri.verdict != Verdict::Feasible);
}

TEST_CASE("the reported best never increases across rounds") {
    MetricGraph src = platonic(Platonic::Cube);
    MetricGraph dst = platonic(Platonic::Tetrahedron);
    ImproveConfig cfg;
    cfg.rounds = 4;
    cfg.seed = 7;
    ImproveResult r = improve(src, dst, cfg);
    REQUIRE(r.verdict == Verdict::Feasible);
    CHECK(verify(src, dst, *r.best).accepted);
    CHECK(r.best->scale == r.best_scale);
    Rat best = r.best_scale;
    std::optional<Rat> running;
    for (const auto& ri : r.trace) {
        if (ri.refined) {
            if (ri.new_best) {
                if (running) CHECK(*ri.refined < *running);
                running = *ri.refined;
            }
        }
    }
    if (running) CHECK(best == *running);
    // the final best is at least as good as the coarse starting point
    REQUIRE(!r.trace.empty());
    REQUIRE(r.trace[0].refined.has_value());
    CHECK(best <= *r.trace[0].refined);
}

TEST_CASE("improvement honors the improved lower bound") {
    MetricGraph src = platonic(Platonic::Octahedron);
    MetricGraph dst = platonic(Platonic::Tetrahedron);
    ImproveConfig cfg;
    cfg.rounds = 3;
    ImproveResult r = improve(src, dst, cfg);
    REQUIRE(r.verdict == Verdict::Feasible);
    CHECK(r.best_scale >= rat(1, 2));
}

TEST_CASE("runs are deterministic for a fixed seed") {
    MetricGraph src = platonic(Platonic::Cube);
    MetricGraph dst = platonic(Platonic::Tetrahedron);
    ImproveConfig cfg;
    cfg.rounds = 3;
    cfg.seed = 42;
    ImproveResult a = improve(src, dst, cfg);
    ImproveResult b = improve(src, dst, cfg);
    REQUIRE(a.verdict == b.verdict);
    CHECK(a.best_scale == b.best_scale);
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].target == b.trace[i].target);
        CHECK(a.trace[i].verdict == b.trace[i].verdict);
        CHECK(a.trace[i].frozen_placements == b.trace[i].frozen_placements);
        CHECK(a.trace[i].frozen_routes == b.trace[i].frozen_routes);
    }
    std::ostringstream sa, sb;
    write_certificate(sa, *a.best, src, dst);
    write_certificate(sb, *b.best, src, dst);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("freeze counts respect the keep fraction") {
    MetricGraph src = platonic(Platonic::Cube);
    MetricGraph dst = platonic(Platonic::Tetrahedron);
    ImproveConfig cfg;
    cfg.rounds = 2;
    cfg.keep_fraction = rat(1, 4);
    ImproveResult r = improve(src, dst, cfg);
    for (const auto& ri : r.trace) {
        if (ri.round == 0) continue;
        CHECK(ri.frozen_placements <= src.vertex_count() / 4);
        CHECK(ri.frozen_routes <= ri.frozen_placements); // routes need both ends frozen
    }
}

TEST_CASE("infeasible pairs report infeasible") {
    // a segment cannot cover a triangle at any scale <= the cap
    MetricGraph src = parse_graph_string("v a\nv b\ne a b\n");
    MetricGraph dst = parse_graph_string("v x\nv y\nv z\ne x y\ne y z\ne x z\n");
    ImproveConfig cfg;
    cfg.rounds = 1;
    cfg.scale_max = Rat(2); // covering the triangle needs a walk of length 3
    ImproveResult r = improve(src, dst, cfg);
    CHECK(r.verdict == Verdict::Infeasible);
    CHECK(!r.best.has_value());
}
