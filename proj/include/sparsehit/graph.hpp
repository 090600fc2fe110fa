#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sparsehit {

using Vertex = std::int32_t;
using VertexSet = std::vector<Vertex>;  // kept sorted and duplicate-free
using Edge = std::pair<Vertex, Vertex>;

// Static simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

    // Duplicate edges are merged; self-loops and out-of-range endpoints throw InputError.
    static Graph from_edges(int n, std::span<const Edge> edges);

    int order() const { return static_cast<int>(adj_.size()); }
    std::size_t size() const { return m_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    int max_degree() const;
    bool adjacent(Vertex u, Vertex v) const;
    std::vector<Edge> edges() const;  // u < v, lexicographic

    bool has_labels() const { return !labels_.empty(); }
    std::string label(Vertex v) const;
    void set_labels(std::vector<std::string> labels);

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::string> labels_;
    std::size_t m_ = 0;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // local id -> id in the parent graph
};

// keep may be unsorted; the local ids follow ascending parent ids.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

// Same vertex ids, but only edges with both endpoints alive survive.
Graph restrict_edges(const Graph& g, const std::vector<char>& alive);

Graph remove_vertices(const Graph& g, std::span<const Vertex> removed);

std::vector<VertexSet> connected_components(const Graph& g);
std::vector<VertexSet> connected_components(const Graph& g, const std::vector<char>& alive);

// -1 for unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, Vertex source);

bool is_connected(const Graph& g);

// Disjoint union; b's vertices are shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

// Edge-list text: "u v" per line, '#' comments, a lone token declares a vertex.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace sparsehit
