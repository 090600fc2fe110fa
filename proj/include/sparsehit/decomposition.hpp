#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsehit/graph.hpp"
#include "sparsehit/pattern.hpp"
#include "sparsehit/rational.hpp"
#include "sparsehit/solution.hpp"
#include "sparsehit/solvers.hpp"

namespace sparsehit {

struct CliqueDecomposition {
    VertexSet v0;
    std::vector<VertexSet> cliques;  // each of size k, sorted
};

struct BicliqueDecomposition {
    VertexSet v0;
    std::vector<std::pair<VertexSet, VertexSet>> bicliques;  // sides of a spanning K_{k,k}
};

CliqueDecomposition clique_decomposition_degeneracy(const Graph& g, int k);

// Halves the vertex range, recurses, then re-decomposes the union of the two leftovers.
// Edges are routed to the lowest recursion node containing both endpoints.
CliqueDecomposition clique_decomposition_divide_conquer(const Graph& g, int k, bool parallel = true);

BicliqueDecomposition biclique_decomposition(const Graph& g, int k, std::uint64_t node_limit = 100'000'000);

struct DecompositionAudit {
    bool valid = true;
    std::string reason;
};

DecompositionAudit audit_decomposition(const Graph& g, const CliqueDecomposition& d, int k);
DecompositionAudit audit_decomposition(const Graph& g, const BicliqueDecomposition& d, int k);

// Exhaustive searches used by the audits (and the wrappers' tests).
std::optional<VertexSet> find_clique(const Graph& g, const std::vector<char>& inside, int k);
std::optional<std::pair<VertexSet, VertexSet>> find_biclique(const Graph& g, const std::vector<char>& inside, int k,
                                                             std::uint64_t node_limit = 100'000'000);

int clique_wrapper_k(const Rational& epsilon, int gamma);
int biclique_wrapper_k(const Rational& epsilon, int gamma);

bool is_bipartite(const Graph& g);

Solution clique_wrapper_hitting(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner);
Solution biclique_wrapper_hitting(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner);

// Embedding of h (pattern vertex -> host vertex) as a subgraph, or nullopt.
std::optional<std::vector<Vertex>> k_subgraph_isomorphism(const Graph& g, const Graph& h, int k);

}  // namespace sparsehit
