#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sparsehit/graph.hpp"

namespace sparsehit {

enum class Mode { Subgraph, Induced };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view text);

struct Pattern {
    Graph graph;
    bool connected = true;
    std::string name;

    int order() const { return graph.order(); }
};

// Throws InputError for graphs with fewer than two vertices.
Pattern make_pattern(Graph graph, std::string name);

// K<n>, P<n> (n vertices), C<n>, star<n> (n leaves), claw, K<a>x<b>; "+" joins disjoint unions.
Pattern builtin_pattern(std::string_view spec);

// A built-in spec, or a path to an edge-list file.
Pattern load_pattern(std::string_view spec);

struct PatternSet {
    std::vector<Pattern> patterns;
    Mode mode = Mode::Subgraph;
    int gamma = 0;

    bool all_connected() const;
    std::string describe() const;
};

PatternSet make_pattern_set(std::vector<Pattern> patterns, Mode mode);

// Comma-separated list of pattern specs.
PatternSet parse_pattern_list(std::string_view list, Mode mode);

// Isomorphism-invariant code for graphs with at most 11 vertices.
struct CanonicalCode {
    int n = 0;
    std::uint64_t bits = 0;
    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

std::vector<Graph> component_graphs(const Graph& g);

// All pattern sets obtained by picking one component per pattern, duplicates removed.
std::vector<PatternSet> conn_expansion(const PatternSet& fs);

// Exhaustive branch-set search: does `minor` occur in `host` as a d-shallow minor?
// With induced, non-adjacent pattern vertices must have non-adjacent branch sets.
bool has_shallow_minor(const Graph& host, const Graph& minor, int d, bool induced);

struct ExpansionOptions {
    std::uint64_t budget = 200'000'000;  // labelled graphs times permutations examined
};

// Every graph on at most size_cap vertices containing some pattern as an induced
// d-shallow minor, one representative per isomorphism class.
PatternSet shallow_minor_expansion(const PatternSet& fs, int d, int size_cap, ExpansionOptions options = {});

}  // namespace sparsehit
