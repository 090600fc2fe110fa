#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparsehit/graph.hpp"
#include "sparsehit/occurrences.hpp"

namespace sparsehit {

struct Sunflower {
    std::vector<std::size_t> members;  // indices into the searched family, ascending
    VertexSet core;
};

bool is_sunflower(std::span<const VertexSet> family, const Sunflower& s);

// Lexicographically smallest member list forming an r-sunflower, if one exists.
std::optional<Sunflower> find_sunflower(std::span<const VertexSet> family, int r,
                                        std::uint64_t node_limit = 50'000'000);

struct PackingResult {
    std::vector<std::size_t> chosen;  // indices of pairwise disjoint sets
    bool exact = true;                // false when the search stopped at the target
};

// Maximum number of pairwise disjoint sets (empty sets count, each once).
// With a target the search stops as soon as that many are found.
PackingResult max_disjoint_packing(std::span<const VertexSet> sets, std::optional<std::size_t> target = std::nullopt,
                                   std::uint64_t node_limit = 50'000'000);

struct HeavySetReport {
    VertexSet core;
    std::int64_t threshold = 0;  // delta * gamma^|core|
    std::optional<Sunflower> witness;  // member ids are occurrence ids
    std::int64_t max_packing = 0;
    bool heavy = false;
};

std::int64_t heavy_threshold(std::int64_t delta, int gamma, std::size_t core_size);

// alive == nullptr means the whole index; otherwise only occurrences inside the alive set count.
HeavySetReport is_heavy(const VertexSet& core, const OccurrenceIndex& occ, const std::vector<char>* alive,
                        std::int64_t delta, int gamma);

// Heaviness decision without computing the exact maximum; used inside the reduction.
class HeavyTester {
public:
    HeavyTester(const OccurrenceIndex& occ, std::int64_t delta, int gamma) : occ_(occ), delta_(delta), gamma_(gamma) {}

    // witness receives the occurrence ids of a sunflower reaching the threshold.
    bool heavy(const VertexSet& core, const std::vector<char>* alive, std::vector<std::uint32_t>* witness = nullptr) const;

    std::uint64_t node_limit = 50'000'000;

private:
    const OccurrenceIndex& occ_;
    std::int64_t delta_;
    int gamma_;
};

// Minimal heavy sets of the occurrence family restricted to the alive set, sorted.
std::vector<VertexSet> minimal_heavy_sets(const OccurrenceIndex& occ, const std::vector<char>* alive,
                                          std::int64_t delta, int gamma);

// Greedy q-representative sub-family (indices into family).
std::vector<std::size_t> representative_set(std::span<const VertexSet> family, int q,
                                            std::uint64_t node_limit = 50'000'000);

}  // namespace sparsehit
