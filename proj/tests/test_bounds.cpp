#include "doctest.h"

#include "iso/bounds.hpp"
#include "iso/catalog.hpp"

using namespace iso;
using P = Platonic;

TEST_CASE("odd degree count") {
    CHECK(odd_degree_count(platonic(P::Tetrahedron)) == 4);
    CHECK(odd_degree_count(platonic(P::Octahedron)) == 0);
    MetricGraph path = parse_graph_string("v a\nv b\nv c\ne a b\ne b c\n");
    CHECK(odd_degree_count(path) == 2);
}

TEST_CASE("naive bound is a perimeter ratio") {
    CHECK(naive_lower(platonic(P::Tetrahedron), platonic(P::Cube)) == Rat(2));
    CHECK(naive_lower(platonic(P::Cube), platonic(P::Tetrahedron)) == rat(1, 2));
}

TEST_CASE("published lower bound table, exact values and strictness") {
    struct Cell {
        P s, d;
        Rat value;
        bool strict;
    };
    // row = source, column = target
    const Cell cells[] = {
        {P::Tetrahedron, P::Tetrahedron, Rat(1), false},
        {P::Tetrahedron, P::Cube, rat(7, 3), false},
        {P::Tetrahedron, P::Octahedron, Rat(2), true},
        {P::Tetrahedron, P::Dodecahedron, rat(19, 3), false},
        {P::Tetrahedron, P::Icosahedron, rat(17, 3), true},
        {P::Cube, P::Tetrahedron, rat(1, 2), true},
        {P::Cube, P::Cube, Rat(1), false},
        {P::Cube, P::Octahedron, Rat(1), true},
        {P::Cube, P::Dodecahedron, Rat(3), false},
        {P::Cube, P::Icosahedron, rat(8, 3), true},
        {P::Octahedron, P::Tetrahedron, rat(1, 2), true},
        {P::Octahedron, P::Cube, rat(13, 12), true},
        {P::Octahedron, P::Octahedron, Rat(1), false},
        {P::Octahedron, P::Dodecahedron, rat(37, 12), true},
        // (30 + (12-6)/2) / 12; the catalog's published table records the
        // historically printed 5/2 for this pair, but the formula gives 11/4
        {P::Octahedron, P::Icosahedron, rat(11, 4), true},
        {P::Dodecahedron, P::Tetrahedron, rat(1, 5), true},
        {P::Dodecahedron, P::Cube, rat(2, 5), true},
        {P::Dodecahedron, P::Octahedron, rat(2, 5), true},
        {P::Dodecahedron, P::Dodecahedron, Rat(1), false},
        {P::Dodecahedron, P::Icosahedron, Rat(1), true},
        {P::Icosahedron, P::Tetrahedron, rat(1, 5), true},
        {P::Icosahedron, P::Cube, rat(2, 5), true},
        {P::Icosahedron, P::Octahedron, rat(2, 5), true},
        {P::Icosahedron, P::Dodecahedron, rat(17, 15), true},
        {P::Icosahedron, P::Icosahedron, Rat(1), false},
    };
    for (const auto& c : cells) {
        CAPTURE(platonic_name(c.s));
        CAPTURE(platonic_name(c.d));
        LowerBoundResult lb = improved_lower(platonic(c.s), platonic(c.d));
        CHECK(lb.value == c.value);
        CHECK(lb.strict == c.strict);
        CHECK(!lb.non_uniform_fallback);
    }
}

TEST_CASE("component breakdown: tetrahedron onto dodecahedron") {
    LowerBoundResult lb = improved_lower(platonic(P::Tetrahedron), platonic(P::Dodecahedron));
    CHECK(lb.value == rat(19, 3)); // (30 + (20-4)/2) / 6
    CHECK(lb.perimeter_t == Rat(30));
    CHECK(lb.doubling_term == Rat(8));
    CHECK(lb.perimeter_s == Rat(6));
    CHECK(lb.odd_target_vertices == 20);
    CHECK(lb.source_vertices == 4);
}

TEST_CASE("doubling term only with more odd target vertices than source vertices") {
    // o_t = 0: octahedron target never gets a doubling term
    LowerBoundResult lb = improved_lower(platonic(P::Tetrahedron), platonic(P::Octahedron));
    CHECK(lb.doubling_term == Rat(0));
    CHECK(lb.value == Rat(2));
}

TEST_CASE("non-uniform target lengths fall back to the naive bound") {
    MetricGraph src = parse_graph_string("v a\nv b\ne a b\n");
    MetricGraph dst = parse_graph_string("v a\nv b\nv c\ne a b 1\ne b c 2\ne a c 1\n");
    LowerBoundResult lb = improved_lower(src, dst);
    CHECK(lb.non_uniform_fallback);
    CHECK(lb.value == Rat(4)); // perimeter ratio only
}

TEST_CASE("improved bound dominates the naive bound") {
    for (auto s : all_platonics)
        for (auto d : all_platonics)
            CHECK(improved_lower(platonic(s), platonic(d)).value >=
                  naive_lower(platonic(s), platonic(d)));
}
