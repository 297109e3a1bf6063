#include "iso/catalog.hpp"

namespace iso {

const char* platonic_name(Platonic p) {
    switch (p) {
        case Platonic::Tetrahedron: return "tetrahedron";
        case Platonic::Cube: return "cube";
        case Platonic::Octahedron: return "octahedron";
        case Platonic::Dodecahedron: return "dodecahedron";
        case Platonic::Icosahedron: return "icosahedron";
    }
    return "?";
}

std::optional<Platonic> platonic_from_name(const std::string& name) {
    for (Platonic p : all_platonics)
        if (name == platonic_name(p)) return p;
    return std::nullopt;
}

namespace {

MetricGraph make_tetrahedron() {
    MetricGraph g;
    const char* v[] = {"A", "B", "C", "D"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.add_edge(v[i], v[j]);
    return g;
}

MetricGraph make_cube() {
    MetricGraph g;
    auto bits = [](int i) {
        std::string s(3, '0');
        for (int b = 0; b < 3; ++b)
            if (i & (1 << b)) s[2 - b] = '1';
        return s;
    };
    for (int i = 0; i < 8; ++i)
        for (int b = 0; b < 3; ++b) {
            int j = i ^ (1 << b);
            if (i < j) g.add_edge(bits(i), bits(j));
        }
    return g;
}

MetricGraph make_octahedron() {
    MetricGraph g;
    // K_{2,2,2}: all pairs except the three antipodal ones.
    const char* v[] = {"X+", "X-", "Y+", "Y-", "Z+", "Z-"};
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            if (i / 2 == j / 2) continue;
            g.add_edge(v[i], v[j]);
        }
    return g;
}

MetricGraph make_dodecahedron() {
    // Generalized Petersen graph GP(10,2).
    MetricGraph g;
    auto u = [](int i) { return "u" + std::to_string(i % 10); };
    auto w = [](int i) { return "w" + std::to_string(i % 10); };
    for (int i = 0; i < 10; ++i) {
        g.add_edge(u(i), u(i + 1));
        g.add_edge(u(i), w(i));
        g.add_edge(w(i), w(i + 2));
    }
    return g;
}

MetricGraph make_icosahedron() {
    MetricGraph g;
    auto u = [](int i) { return "u" + std::to_string(i % 5); };
    auto l = [](int i) { return "l" + std::to_string(i % 5); };
    for (int i = 0; i < 5; ++i) {
        g.add_edge("T", u(i));
        g.add_edge(u(i), u(i + 1));
        g.add_edge("B", l(i));
        g.add_edge(l(i), l(i + 1));
        g.add_edge(u(i), l(i));
        g.add_edge(u(i), l(i + 1));
    }
    return g;
}

} // namespace

MetricGraph platonic(Platonic p) {
    switch (p) {
        case Platonic::Tetrahedron: return make_tetrahedron();
        case Platonic::Cube: return make_cube();
        case Platonic::Octahedron: return make_octahedron();
        case Platonic::Dodecahedron: return make_dodecahedron();
        case Platonic::Icosahedron: return make_icosahedron();
    }
    throw std::logic_error("unknown solid");
}

BoundInterval published_bounds(Platonic src, Platonic dst) {
    struct Cell {
        long ln, ld;
        bool strict;
        long un, ud;
    };
    // Row = source, column = target, order T, C, O, D, I.
    static const Cell table[5][5] = {
        {{1, 1, false, 1, 1}, {7, 3, false, 17, 6}, {2, 1, true, 5, 2}, {19, 3, false, 41, 6}, {17, 3, true, 47, 8}},
        {{1, 2, true, 5, 6}, {1, 1, false, 1, 1}, {1, 1, true, 3, 2}, {3, 1, false, 3, 1}, {8, 3, true, 3, 1}},
        {{1, 2, true, 1, 1}, {13, 12, true, 3, 2}, {1, 1, false, 1, 1}, {37, 12, true, 4, 1}, {5, 2, true, 3, 1}},
        {{1, 5, true, 3, 5}, {2, 5, true, 4, 5}, {2, 5, true, 3, 4}, {1, 1, false, 1, 1}, {1, 1, true, 4, 3}},
        {{1, 5, true, 1, 1}, {1, 1, true, 4, 3}, {2, 5, true, 1, 1}, {17, 15, true, 2, 1}, {1, 1, false, 1, 1}},
    };
    const Cell& c = table[static_cast<int>(src)][static_cast<int>(dst)];
    BoundInterval b;
    b.lower = rat(c.ln, c.ld);
    b.lower_strict = c.strict;
    b.upper = rat(c.un, c.ud);
    b.origin = (src == Platonic::Icosahedron && dst == Platonic::Cube) ? BoundOrigin::Topological
                                                                      : BoundOrigin::Formula;
    return b;
}

} // namespace iso
