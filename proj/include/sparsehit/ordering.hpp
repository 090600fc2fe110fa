#pragma once

#include <vector>

#include "sparsehit/graph.hpp"

namespace sparsehit {

struct VertexOrdering {
    std::vector<int> rank;      // sigma: vertex -> position
    std::vector<Vertex> order;  // position -> vertex
    int radius = 0;
    std::vector<int> wcol;  // wcol[i] = wcol_i(G, sigma) for i <= radius, empty if not measured

    static VertexOrdering from_order(std::vector<Vertex> order);
    static VertexOrdering identity(int n);

    bool before(Vertex u, Vertex v) const { return rank[u] < rank[v]; }
};

struct DegeneracyResult {
    VertexOrdering ordering;  // every vertex has at most `degeneracy` earlier neighbours
    int degeneracy = 0;
    std::vector<VertexSet> back;  // earlier neighbours per vertex, ascending id
};

DegeneracyResult degeneracy_ordering(const Graph& g);

struct WeakReachability {
    int radius = 0;
    std::vector<VertexSet> sets;  // WR_r(v), ascending id
};

// profile, if given, receives max_v |WR_i(v)| for i = 0..r.
WeakReachability weak_reachability(const Graph& g, const VertexOrdering& sigma, int r,
                                   std::vector<int>* profile = nullptr);

// Min-degree peeling order: each vertex has at most d neighbours ranked above it.
// wcol is measured for every radius up to r.
VertexOrdering build_ordering(const Graph& g, int r);

void measure_wcol(const Graph& g, VertexOrdering& sigma, int r);

}  // namespace sparsehit
