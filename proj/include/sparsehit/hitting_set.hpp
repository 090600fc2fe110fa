#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparsehit/graph.hpp"

namespace sparsehit {

struct HittingSetOptions {
    std::optional<std::size_t> max_size;  // give up (nullopt) when the optimum is larger
    std::uint64_t node_limit = 200'000'000;  // search nodes, each also charged 1 per 256 sets it scans
};

// Exact minimum hitting set by branch and bound. Sets may use arbitrary vertex ids.
// Returns nullopt only when max_size is set and the optimum exceeds it; throws BudgetExceeded
// when the node limit runs out.
std::optional<VertexSet> min_hitting_set(std::span<const VertexSet> sets, const HittingSetOptions& options = {});

// Size of a greedily built family of pairwise disjoint sets: a lower bound on the optimum.
std::size_t disjoint_lower_bound(std::span<const VertexSet> sets);

}  // namespace sparsehit
