#include "sparsehit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "sparsehit/errors.hpp"

namespace sparsehit {

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& list : g.adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        g.m_ += list.size();
    }
    g.m_ /= 2;
    return g;
}

int Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adj_) best = std::max(best, list.size());
    return static_cast<int>(best);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex target = &a == &adj_[u] ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < order(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::string Graph::label(Vertex v) const {
    return labels_.empty() ? std::to_string(v) : labels_[v];
}

void Graph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != adj_.size()) throw InputError("label count does not match vertex count");
    labels_ = std::move(labels);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
    std::vector<Vertex> ids(keep.begin(), keep.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Vertex> local(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 0 || ids[i] >= g.order()) throw InputError("unknown vertex id " + std::to_string(ids[i]));
        local[ids[i]] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (Vertex w : g.neighbors(ids[i]))
            if (local[w] > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), local[w]);
    InducedSubgraph sub{Graph::from_edges(static_cast<int>(ids.size()), edges), std::move(ids)};
    if (g.has_labels()) {
        std::vector<std::string> labels;
        for (Vertex v : sub.to_parent) labels.push_back(g.label(v));
        sub.graph.set_labels(std::move(labels));
    }
    return sub;
}

Graph restrict_edges(const Graph& g, const std::vector<char>& alive) {
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (alive[u] && alive[v]) edges.emplace_back(u, v);
    Graph out = Graph::from_edges(g.order(), edges);
    if (g.has_labels()) {
        std::vector<std::string> labels;
        for (Vertex v = 0; v < g.order(); ++v) labels.push_back(g.label(v));
        out.set_labels(std::move(labels));
    }
    return out;
}

Graph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
    std::vector<char> alive(static_cast<std::size_t>(g.order()), 1);
    for (Vertex v : removed) alive[v] = 0;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.order(); ++v)
        if (alive[v]) keep.push_back(v);
    return induced_subgraph(g, keep).graph;
}

std::vector<VertexSet> connected_components(const Graph& g, const std::vector<char>& alive) {
    std::vector<VertexSet> comps;
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s] || !alive[s]) continue;
        VertexSet comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v))
                if (!seen[w] && alive[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    return connected_components(g, std::vector<char>(static_cast<std::size_t>(g.order()), 1));
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
    std::queue<Vertex> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    return g.order() <= 1 || connected_components(g).size() == 1;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    auto edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + a.order(), v + a.order());
    return Graph::from_edges(a.order() + b.order(), edges);
}

Graph read_edge_list(std::istream& in) {
    std::unordered_map<std::string, Vertex> ids;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    auto id_of = [&](const std::string& token) {
        auto [it, inserted] = ids.try_emplace(token, static_cast<Vertex>(labels.size()));
        if (inserted) labels.push_back(token);
        return it->second;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::vector<std::string> parts;
        for (std::string t; tokens >> t;) parts.push_back(t);
        if (parts.empty()) continue;
        if (parts.size() > 2) throw InputError("line " + std::to_string(lineno) + ": expected 'u v'");
        Vertex u = id_of(parts[0]);
        if (parts.size() == 2) {
            Vertex v = id_of(parts[1]);
            if (u == v) throw InputError("line " + std::to_string(lineno) + ": self-loop");
            edges.emplace_back(u, v);
        }
    }
    Graph g = Graph::from_edges(static_cast<int>(labels.size()), edges);
    g.set_labels(std::move(labels));
    return g;
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) == 0) out << g.label(v) << '\n';
}

}  // namespace sparsehit
