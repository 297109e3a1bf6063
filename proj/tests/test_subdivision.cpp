#include "doctest.h"

#include "iso/subdivision.hpp"

using namespace iso;

namespace {

MetricGraph path2() {
    MetricGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_vertex("c");
    g.add_edge("a", "b");
    g.add_edge("b", "c", Rat(2));
    return g;
}

} // namespace

TEST_CASE("uniform subdivision splits every edge into q parts") {
    MetricGraph g = path2();
    Subdivision sub = subdivide(g, 3);
    CHECK(sub.derived().vertex_count() == 3 + 2 * 2);
    CHECK(sub.derived().edge_count() == 6);
    CHECK(sub.derived().perimeter() == g.perimeter());
    // derived edges of base edge 1 have length 2/3
    for (int de = 0; de < sub.derived().edge_count(); ++de)
        if (sub.segment(de).base_edge == 1) CHECK(sub.derived().edge(de).length == rat(2, 3));
}

TEST_CASE("q=1 reproduces the base graph") {
    MetricGraph g = path2();
    Subdivision sub = subdivide(g, 1);
    CHECK(sub.derived().vertex_count() == g.vertex_count());
    CHECK(sub.derived().edge_count() == g.edge_count());
}

TEST_CASE("chains run from offset 0 to offset 1") {
    MetricGraph g = path2();
    Subdivision sub = subdivide(g, 2);
    const auto& chain = sub.chain(0);
    REQUIRE(chain.size() == 3);
    CHECK(sub.vertex_point(chain.front()).is_vertex());
    CHECK(sub.vertex_point(chain.back()).is_vertex());
    CHECK(sub.vertex_point(chain[1]).offset == rat(1, 2));
    // segment bounds are consecutive
    for (int de = 0; de < sub.derived().edge_count(); ++de) {
        const auto& seg = sub.segment(de);
        CHECK(seg.lo < seg.hi);
    }
}

TEST_CASE("locate resolves grid points and rejects off-grid points") {
    MetricGraph g = path2();
    Subdivision sub = subdivide(g, 2);
    CHECK(sub.locate(Point::at_vertex(1)).has_value());
    CHECK(sub.locate(Point::interior(0, rat(1, 2))).has_value());
    CHECK(!sub.locate(Point::interior(0, rat(1, 3))).has_value());
}

TEST_CASE("explicit offsets are sorted and deduplicated") {
    MetricGraph g = path2();
    Subdivision sub(g, {{rat(3, 4), rat(1, 4), rat(3, 4)}, {}});
    const auto& chain = sub.chain(0);
    REQUIRE(chain.size() == 4);
    CHECK(sub.vertex_point(chain[1]).offset == rat(1, 4));
    CHECK(sub.vertex_point(chain[2]).offset == rat(3, 4));
    CHECK(sub.chain(1).size() == 2);
}

TEST_CASE("offsets outside (0,1) are rejected") {
    MetricGraph g = path2();
    CHECK_THROWS(Subdivision(g, {{Rat(0)}, {}}));
    CHECK_THROWS(Subdivision(g, {{Rat(1)}, {}}));
}

TEST_CASE("splice recovers the base graph") {
    MetricGraph g = path2();
    Subdivision sub = subdivide(g, 4);
    MetricGraph back = sub.splice();
    CHECK(back.same_structure(g));
}

TEST_CASE("plain integer subdivision") {
    MetricGraph g = path2();
    MetricGraph h = subdivide_plain(g, 3);
    CHECK(h.edge_count() == 6);
    CHECK(h.vertex_count() == 7);
    CHECK(h.perimeter() == g.perimeter());
}
