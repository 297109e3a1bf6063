#pragma once

#include "iso/graph.hpp"

#include <array>

namespace iso {

enum class Platonic { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

inline constexpr std::array<Platonic, 5> all_platonics = {
    Platonic::Tetrahedron, Platonic::Cube, Platonic::Octahedron,
    Platonic::Dodecahedron, Platonic::Icosahedron};

const char* platonic_name(Platonic p);
std::optional<Platonic> platonic_from_name(const std::string& name);

// Unit-length 1-skeleton of the solid.
MetricGraph platonic(Platonic p);

enum class BoundOrigin { Formula, Topological };

// Published interval on the minimum scale factor for folding src onto dst.
struct BoundInterval {
    Rat lower;
    bool lower_strict = false;
    Rat upper;
    BoundOrigin origin = BoundOrigin::Formula;
};

BoundInterval published_bounds(Platonic src, Platonic dst);

} // namespace iso
