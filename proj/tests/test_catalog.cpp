#include "doctest.h"

#include "iso/bounds.hpp"
#include "iso/catalog.hpp"

using namespace iso;

TEST_CASE("solid statistics") {
    struct Row {
        Platonic p;
        int n, e, odd, deg;
    };
    const Row rows[] = {
        {Platonic::Tetrahedron, 4, 6, 4, 3},  {Platonic::Cube, 8, 12, 8, 3},
        {Platonic::Octahedron, 6, 12, 0, 4},  {Platonic::Dodecahedron, 20, 30, 20, 3},
        {Platonic::Icosahedron, 12, 30, 12, 5}};
    for (const auto& r : rows) {
        CAPTURE(platonic_name(r.p));
        MetricGraph g = platonic(r.p);
        CHECK(g.vertex_count() == r.n);
        CHECK(g.edge_count() == r.e);
        CHECK(odd_degree_count(g) == r.odd);
        CHECK(g.perimeter() == Rat(r.e));
        for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == r.deg);
        CHECK(validate(g).valid);
    }
}

TEST_CASE("name round-trip") {
    for (auto p : all_platonics) {
        auto back = platonic_from_name(platonic_name(p));
        REQUIRE(back.has_value());
        CHECK(*back == p);
    }
    CHECK(!platonic_from_name("sphere"));
}

TEST_CASE("published bound table") {
    auto cell = [](Platonic s, Platonic d) { return published_bounds(s, d); };
    using P = Platonic;

    // diagonal is [1,1]
    for (auto p : all_platonics) {
        BoundInterval b = cell(p, p);
        CHECK(b.lower == Rat(1));
        CHECK(b.upper == Rat(1));
        CHECK(!b.lower_strict);
    }

    struct Cell {
        P s, d;
        Rat lo;
        bool strict;
        Rat up;
    };
    const Cell cells[] = {
        {P::Tetrahedron, P::Cube, rat(7, 3), false, rat(17, 6)},
        {P::Tetrahedron, P::Octahedron, Rat(2), true, rat(5, 2)},
        {P::Tetrahedron, P::Dodecahedron, rat(19, 3), false, rat(41, 6)},
        {P::Tetrahedron, P::Icosahedron, rat(17, 3), true, rat(47, 8)},
        {P::Cube, P::Tetrahedron, rat(1, 2), true, rat(5, 6)},
        {P::Cube, P::Octahedron, Rat(1), true, rat(3, 2)},
        {P::Cube, P::Dodecahedron, Rat(3), false, Rat(3)},
        {P::Cube, P::Icosahedron, rat(8, 3), true, Rat(3)},
        {P::Octahedron, P::Tetrahedron, rat(1, 2), true, Rat(1)},
        {P::Octahedron, P::Cube, rat(13, 12), true, rat(3, 2)},
        {P::Octahedron, P::Dodecahedron, rat(37, 12), true, Rat(4)},
        {P::Octahedron, P::Icosahedron, rat(5, 2), true, Rat(3)},
        {P::Dodecahedron, P::Tetrahedron, rat(1, 5), true, rat(3, 5)},
        {P::Dodecahedron, P::Cube, rat(2, 5), true, rat(4, 5)},
        {P::Dodecahedron, P::Octahedron, rat(2, 5), true, rat(3, 4)},
        {P::Dodecahedron, P::Icosahedron, Rat(1), true, rat(4, 3)},
        {P::Icosahedron, P::Tetrahedron, rat(1, 5), true, Rat(1)},
        {P::Icosahedron, P::Cube, Rat(1), true, rat(4, 3)},
        {P::Icosahedron, P::Octahedron, rat(2, 5), true, Rat(1)},
        {P::Icosahedron, P::Dodecahedron, rat(17, 15), true, Rat(2)},
    };
    for (const auto& c : cells) {
        CAPTURE(platonic_name(c.s));
        CAPTURE(platonic_name(c.d));
        BoundInterval b = cell(c.s, c.d);
        CHECK(b.lower == c.lo);
        CHECK(b.lower_strict == c.strict);
        CHECK(b.upper == c.up);
    }

    // the icosahedron->cube bound comes from the topological argument
    CHECK(cell(P::Icosahedron, P::Cube).origin == BoundOrigin::Topological);
    int topological = 0;
    for (auto s : all_platonics)
        for (auto d : all_platonics)
            if (cell(s, d).origin == BoundOrigin::Topological) ++topological;
    CHECK(topological == 1);
}
