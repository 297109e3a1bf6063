#include "doctest.h"

#include "iso/catalog.hpp"
#include "iso/covering.hpp"

#include <sstream>

using namespace iso;

namespace {

MetricGraph unit_edge() { return parse_graph_string("v x\nv y\ne x y\n"); }
MetricGraph path2() { return parse_graph_string("v a\nv b\nv c\ne a b\ne b c\n"); }

} // namespace

TEST_CASE("identity fold verifies at scale 1 on every solid") {
    for (auto p : all_platonics) {
        MetricGraph g = platonic(p);
        FoldingMap fm = identity_fold(g);
        VerifyReport rep = verify(g, g, fm);
        CAPTURE(platonic_name(p));
        CHECK(rep.accepted);
        CHECK(rep.doubled == Rat(0));
        CHECK(rep.total_routed == g.perimeter());
    }
}

TEST_CASE("P3 folds onto an edge at 1/2 by tiling the halves") {
    MetricGraph src = path2(), dst = unit_edge();
    FoldingMap fm;
    fm.scale = rat(1, 2);
    fm.placement[0] = Point::at_vertex(0);                 // a -> x
    fm.placement[1] = Point::interior(0, rat(1, 2));       // b -> midpoint
    fm.placement[2] = Point::at_vertex(0);                 // c -> x
    fm.routes[0] = {Point::at_vertex(0), Point::interior(0, rat(1, 2))};
    fm.routes[1] = {Point::interior(0, rat(1, 2)), Point::at_vertex(0)};
    VerifyReport rep = verify(src, dst, fm);
    CHECK(!rep.accepted); // the (1/2,1] half is never covered
    fm.placement[2] = Point::at_vertex(1); // c -> y: the two halves tile the edge
    fm.routes[1] = {Point::interior(0, rat(1, 2)), Point::at_vertex(1)};
    rep = verify(src, dst, fm);
    CHECK(rep.accepted);
    CHECK(rep.doubled == Rat(0));
}

TEST_CASE("P3 folds onto an edge at 1 with the whole edge doubled") {
    MetricGraph src = path2(), dst = unit_edge();
    FoldingMap fm;
    fm.scale = Rat(1);
    fm.placement[0] = Point::at_vertex(0); // a -> x
    fm.placement[1] = Point::at_vertex(1); // b -> y
    fm.placement[2] = Point::at_vertex(0); // c -> x
    fm.routes[0] = {Point::at_vertex(0), Point::at_vertex(1)};
    fm.routes[1] = {Point::at_vertex(1), Point::at_vertex(0)};
    VerifyReport rep = verify(src, dst, fm);
    CHECK(rep.accepted);
    CHECK(rep.doubled == Rat(1)); // the whole edge is covered twice
}

TEST_CASE("doubled length counts measure covered at multiplicity >= 2") {
    CoverageProfile prof;
    prof.per_edge.push_back({{Rat(0), rat(1, 4), 1}, {rat(1, 4), rat(3, 4), 3}, {rat(3, 4), Rat(1), 2}});
    MetricGraph dst = unit_edge();
    CHECK(doubled_length(prof, dst) == rat(3, 4));
}

TEST_CASE("budget violations are rejected") {
    MetricGraph src = unit_edge(), dst = path2();
    FoldingMap fm;
    fm.scale = Rat(1);
    fm.placement[0] = Point::at_vertex(*dst.find_vertex("a"));
    fm.placement[1] = Point::at_vertex(*dst.find_vertex("c"));
    fm.routes[0] = {Point::at_vertex(*dst.find_vertex("a")), Point::at_vertex(*dst.find_vertex("b")),
                    Point::at_vertex(*dst.find_vertex("c"))};
    VerifyReport rep = verify(src, dst, fm); // length 2 > budget 1
    CHECK(!rep.accepted);
    fm.scale = Rat(2);
    rep = verify(src, dst, fm);
    CHECK(rep.accepted);
}

TEST_CASE("route endpoints must match placements") {
    MetricGraph src = unit_edge(), dst = path2();
    FoldingMap fm;
    fm.scale = Rat(2);
    fm.placement[0] = Point::at_vertex(*dst.find_vertex("a"));
    fm.placement[1] = Point::at_vertex(*dst.find_vertex("c"));
    fm.routes[0] = {Point::at_vertex(*dst.find_vertex("b")), Point::at_vertex(*dst.find_vertex("c"))};
    CHECK(!verify(src, dst, fm).accepted);
}

TEST_CASE("coverage gaps are reported") {
    MetricGraph src = unit_edge(), dst = path2();
    FoldingMap fm;
    fm.scale = Rat(2);
    int a = *dst.find_vertex("a"), b = *dst.find_vertex("b");
    fm.placement[0] = Point::at_vertex(a);
    fm.placement[1] = Point::at_vertex(b);
    fm.routes[0] = {Point::at_vertex(a), Point::at_vertex(b)};
    VerifyReport rep = verify(src, dst, fm);
    CHECK(!rep.accepted);
    bool gap = false;
    for (const auto& e : rep.errors)
        if (e.find("CoverageGap") != std::string::npos) gap = true;
    CHECK(gap);
}

TEST_CASE("slack must be realizable") {
    // Route shorter than the budget is fine: the leftover is absorbed by a
    // back-and-forth into an incident edge.
    MetricGraph src = unit_edge(), dst = unit_edge();
    FoldingMap fm;
    fm.scale = Rat(1);
    fm.placement[0] = Point::at_vertex(0);
    fm.placement[1] = Point::at_vertex(1);
    fm.routes[0] = {Point::at_vertex(0), Point::at_vertex(1)};
    CHECK(verify(src, dst, fm).accepted);

    // Degenerate single-point routes work when an incident edge exists.
    MetricGraph two = parse_graph_string("v a\nv b\ne a b\ne a b 2\n");
    FoldingMap fm2;
    fm2.scale = Rat(3);
    fm2.placement[0] = Point::at_vertex(0);
    fm2.placement[1] = Point::at_vertex(0);
    fm2.routes[0] = {Point::at_vertex(0), Point::interior(0, Rat(1) / 2), Point::at_vertex(1),
                     Point::interior(1, Rat(1) / 2), Point::at_vertex(0)};
    fm2.routes[1] = {Point::at_vertex(0)}; // single point; slack 6 absorbed by a wiggle
    CHECK(verify(two, two, fm2).accepted);
}

TEST_CASE("certificate text round-trip") {
    MetricGraph src = path2(), dst = platonic(Platonic::Tetrahedron);
    FoldingMap fm;
    fm.scale = rat(3, 2);
    fm.placement[0] = Point::at_vertex(0);
    fm.placement[1] = Point::interior(2, rat(1, 3));
    fm.placement[2] = Point::at_vertex(1);
    fm.routes[0] = {Point::at_vertex(0), Point::interior(2, rat(1, 3))};
    fm.routes[1] = {Point::interior(2, rat(1, 3)), Point::at_vertex(0), Point::at_vertex(1)};
    std::ostringstream out;
    write_certificate(out, fm, src, dst);
    FoldingMap back = parse_certificate_string(out.str(), src, dst);
    CHECK(back.scale == fm.scale);
    CHECK(back.placement == fm.placement);
    REQUIRE(back.routes.size() == fm.routes.size());
    for (const auto& [e, w] : fm.routes) CHECK(back.routes.at(e) == w);

    // writing the parsed certificate again is byte-identical
    std::ostringstream out2;
    write_certificate(out2, back, src, dst);
    CHECK(out2.str() == out.str());
}

TEST_CASE("certificate parser flips reversed endpoints") {
    MetricGraph src = unit_edge(), dst = path2();
    // dst edge 0 is a--b; writing `e b a 1/4` means 1/4 from b, i.e. 3/4 from a
    std::string text = "scale 1\nplace x e b a 1/4\nplace y v c\nroute x y : e b a 1/4 ; v b ; v c\n";
    FoldingMap fm = parse_certificate_string(text, src, dst);
    const Point& p = fm.placement.at(0);
    CHECK(!p.is_vertex());
    CHECK(p.offset == rat(3, 4));
}

TEST_CASE("certificate parser rejects unknown names") {
    MetricGraph src = unit_edge(), dst = path2();
    CHECK_THROWS_AS(parse_certificate_string("scale 1\nplace z v a\n", src, dst), ParseError);
    CHECK_THROWS_AS(parse_certificate_string("scale 1\nplace x v q\n", src, dst), ParseError);
    CHECK_THROWS_AS(parse_certificate_string("scale\n", src, dst), ParseError);
}
