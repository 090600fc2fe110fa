#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsehit/graph.hpp"
#include "sparsehit/pattern.hpp"

namespace sparsehit {

// The set system V: distinct occurrence vertex sets with a per-vertex incidence index.
class OccurrenceIndex {
public:
    OccurrenceIndex() = default;

    // sets: sorted vertex sets, pattern: index of the first pattern realizing each set.
    OccurrenceIndex(int n, std::vector<VertexSet> sets, std::vector<int> pattern);

    std::size_t size() const { return pattern_.size(); }
    bool empty() const { return pattern_.empty(); }
    int vertex_count() const { return n_; }

    std::span<const Vertex> operator[](std::size_t i) const {
        return {data_.data() + offsets_[i], data_.data() + offsets_[i + 1]};
    }
    int pattern_of(std::size_t i) const { return pattern_[i]; }
    std::span<const std::uint32_t> containing(Vertex v) const {
        return {incidence_.data() + vertex_offsets_[v], incidence_.data() + vertex_offsets_[v + 1]};
    }
    std::vector<VertexSet> sets() const;

private:
    int n_ = 0;
    std::vector<Vertex> data_;
    std::vector<std::size_t> offsets_{0};
    std::vector<int> pattern_;
    std::vector<std::uint32_t> incidence_;
    std::vector<std::size_t> vertex_offsets_;
};

struct EnumerationOptions {
    std::size_t budget = 10'000'000;  // maximum number of distinct occurrences
};

OccurrenceIndex enumerate_occurrences(const Graph& g, const PatternSet& fs, EnumerationOptions options = {});

// Vertices that lie in no occurrence.
VertexSet irrelevant_vertices(const Graph& g, const OccurrenceIndex& idx);

// Ids of occurrences contained in the alive vertex set (V restricted to a vertex subset).
std::vector<std::uint32_t> surviving_occurrences(const OccurrenceIndex& idx, const std::vector<char>& alive);

}  // namespace sparsehit
