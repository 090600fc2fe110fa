#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sparsehit/graph.hpp"

namespace sparsehit {

// family: grid | unit-disk | bounded-degree-random | disjoint-cliques | friendship | segment-intersection
//         | erdos-renyi | path | cycle | complete | complete-bipartite | random-tree
struct GeneratorSpec {
    std::string family;
    int n = 0;
    std::map<std::string, double> params;
    std::uint64_t seed = 1;

    double param(const std::string& key, double fallback) const;
    std::string describe() const;
};

Graph generate(const GeneratorSpec& spec);

struct Segment {
    std::int64_t x1, y1, x2, y2;
};

// Exact integer orientation test; touching and collinear overlap count as crossing.
bool segments_intersect(const Segment& a, const Segment& b);

}  // namespace sparsehit
