#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparsehit/graph.hpp"
#include "sparsehit/occurrences.hpp"
#include "sparsehit/pattern.hpp"
#include "sparsehit/rational.hpp"
#include "sparsehit/solution.hpp"

namespace sparsehit {

struct ExactOptions {
    std::optional<std::size_t> max_size;  // report "no solution of this size" instead of solving
    std::uint64_t node_limit = 200'000'000;  // search nodes, each also charged 1 per 256 sets it scans
    EnumerationOptions enumeration;
};

// nullopt only when max_size is set and the optimum exceeds it.
std::optional<Solution> exact_branching_solver(const Graph& g, const PatternSet& fs, const ExactOptions& options = {});

// Exact optimum over a precomputed family; throws BudgetExceeded on node exhaustion.
VertexSet solve_family_exactly(std::span<const VertexSet> family, const ExactOptions& options);

struct SeparatorResult {
    VertexSet separator;
    std::vector<std::size_t> component_sizes;  // components of G - separator, descending
    std::string method;
};

// Heuristic balanced separator of a connected graph: every component of G - S has at most 2n/3 vertices.
SeparatorResult balanced_separator(const Graph& g);

// Recursive separators until every component has at most max_component vertices.
SeparatorResult shatter_to_size(const Graph& g, std::size_t max_component);

// Component bound ceil((1/beta)^exponent).
std::size_t shatter_threshold(const Rational& beta, int exponent);
SeparatorResult shatter_into_small_components(const Graph& g, const Rational& beta, int exponent = 2);

struct SeparatorSchemeOptions {
    std::optional<std::size_t> max_component;  // overrides the (1/beta)^exponent bound
    int exponent = 2;
    ExactOptions exact;
};

Solution separator_scheme(const Graph& g, const PatternSet& fs, const Rational& epsilon,
                          const SeparatorSchemeOptions& options = {});

// Seeded BFS-ball carving: every component of G - S has diameter at most 4*ceil(1/beta).
SeparatorResult ball_carving_partition(const Graph& g, const Rational& beta, std::uint64_t seed);

struct CarveOptions {
    std::optional<Rational> beta;  // defaults to epsilon / maxdeg^(2 gamma)
    std::uint64_t seed = 1;
    ExactOptions exact;
};

Solution carve_exact(const Graph& g, const PatternSet& fs, const Rational& epsilon, const CarveOptions& options = {});

struct Layering {
    Vertex source = 0;
    int alpha = 1;
    int beta = 1;
    std::vector<VertexSet> layers;  // BFS levels from source
    std::vector<int> labels;        // floor(i / beta) mod alpha

    // Maximal runs [first, last] of layers in which every label other than q forms one contiguous block.
    std::vector<std::pair<int, int>> pieces(int q) const;
};

Layering make_layering(const Graph& g, Vertex source, int alpha, int beta);

Solution baker_layering(const Graph& g, const PatternSet& fs, const Rational& epsilon, const ExactOptions& exact = {});

using InnerSolver = std::function<Solution(const Graph&, const PatternSet&, const Rational&)>;

struct SolverConfig {
    ExactOptions exact;
    std::optional<std::size_t> max_component;
    std::optional<Rational> beta;
    std::uint64_t seed = 1;
};

// exact | separator | baker | carve+exact
InnerSolver make_solver(std::string_view name, const SolverConfig& config = {});

}  // namespace sparsehit
