#include "sparsehit/decomposition.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>

#include "sparsehit/errors.hpp"
#include "sparsehit/ordering.hpp"

namespace sparsehit {

namespace {

// Extends `clique` by vertices of cand (pairwise candidates, ascending) until it has k vertices.
bool extend_clique(const Graph& g, VertexSet& clique, const std::vector<Vertex>& cand, int k) {
    if (static_cast<int>(clique.size()) == k) return true;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (clique.size() + (cand.size() - i) < static_cast<std::size_t>(k)) return false;
        std::vector<Vertex> next;
        for (std::size_t j = i + 1; j < cand.size(); ++j)
            if (g.adjacent(cand[i], cand[j])) next.push_back(cand[j]);
        clique.push_back(cand[i]);
        if (clique.size() + next.size() >= static_cast<std::size_t>(k) && extend_clique(g, clique, next, k)) return true;
        clique.pop_back();
    }
    return false;
}

std::optional<VertexSet> clique_among(const Graph& g, std::vector<Vertex> cand, int k) {
    VertexSet clique;
    if (k <= 0) return clique;
    std::sort(cand.begin(), cand.end());
    if (!extend_clique(g, clique, cand, k)) return std::nullopt;
    std::sort(clique.begin(), clique.end());
    return clique;
}

// K_{k,k} with v on side A inside the `inside` vertices (v itself need not be flagged).
class BicliqueSearch {
public:
    BicliqueSearch(const Graph& g, const std::vector<char>& inside, int k, std::uint64_t limit)
        : g_(g), inside_(inside), k_(k), limit_(limit) {}

    std::optional<std::pair<VertexSet, VertexSet>> anchored(Vertex v) {
        v_ = v;
        cand_.clear();
        for (Vertex u : g_.neighbors(v))
            if (inside_[u]) cand_.push_back(u);
        b_.clear();
        if (!search(0, {}) ) return std::nullopt;
        VertexSet a{v};
        a.insert(a.end(), found_a_.begin(), found_a_.end());
        VertexSet b = b_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return std::make_pair(std::move(a), std::move(b));
    }

private:
    bool search(std::size_t start, const std::vector<Vertex>& common) {
        if (++nodes_ > limit_) throw BudgetExceeded("biclique search exceeded its node limit");
        if (static_cast<int>(b_.size()) == k_) {
            found_a_.assign(common.begin(), common.begin() + (k_ - 1));
            return true;
        }
        for (std::size_t i = start; i < cand_.size(); ++i) {
            if (b_.size() + (cand_.size() - i) < static_cast<std::size_t>(k_)) return false;
            const Vertex b = cand_[i];
            std::vector<Vertex> next;
            if (b_.empty()) {
                for (Vertex u : g_.neighbors(b))
                    if (u != v_ && inside_[u]) next.push_back(u);
            } else {
                for (Vertex u : common)
                    if (g_.adjacent(u, b)) next.push_back(u);
            }
            if (static_cast<int>(next.size()) < k_ - 1) continue;
            b_.push_back(b);
            if (search(i + 1, next)) return true;
            b_.pop_back();
        }
        return false;
    }

    const Graph& g_;
    const std::vector<char>& inside_;
    int k_;
    std::uint64_t limit_;
    std::uint64_t nodes_ = 0;
    Vertex v_ = 0;
    std::vector<Vertex> cand_;
    VertexSet b_;
    std::vector<Vertex> found_a_;
};

CliqueDecomposition decompose_local(const Graph& g, int k) {
    CliqueDecomposition out;
    const int n = g.order();
    auto deg = degeneracy_ordering(g);
    std::vector<char> in_v0(static_cast<std::size_t>(n), 0);
    for (Vertex v : deg.ordering.order) {
        std::vector<Vertex> cand;
        for (Vertex u : deg.back[v])
            if (in_v0[u]) cand.push_back(u);
        auto clique = clique_among(g, std::move(cand), k - 1);
        if (!clique) {
            in_v0[v] = 1;
            continue;
        }
        for (Vertex u : *clique) in_v0[u] = 0;
        clique->insert(std::upper_bound(clique->begin(), clique->end(), v), v);
        out.cliques.push_back(std::move(*clique));
    }
    for (Vertex v = 0; v < n; ++v)
        if (in_v0[v]) out.v0.push_back(v);
    return out;
}

struct RecursionTree {
    struct Node {
        int lo = 0, hi = 0;  // vertex range [lo, hi)
        int left = -1, right = -1;
        int depth = 0;
    };
    std::vector<Node> nodes;
    std::vector<int> leaf;                // vertex -> leaf node
    std::vector<std::vector<int>> up;     // binary lifting table
    std::vector<std::vector<Edge>> routed;

    explicit RecursionTree(int n) : leaf(static_cast<std::size_t>(n), -1) {
        if (n == 0) return;
        std::vector<int> parent;
        build(0, n, -1, 0, parent);
        int levels = 1;
        while ((1 << levels) < static_cast<int>(nodes.size())) ++levels;
        up.assign(static_cast<std::size_t>(levels), parent);
        for (int j = 1; j < levels; ++j)
            for (std::size_t x = 0; x < nodes.size(); ++x) up[j][x] = up[j - 1][x] < 0 ? -1 : up[j - 1][up[j - 1][x]];
        routed.resize(nodes.size());
    }

    int build(int lo, int hi, int par, int depth, std::vector<int>& parent) {
        int id = static_cast<int>(nodes.size());
        nodes.push_back({lo, hi, -1, -1, depth});
        parent.push_back(par);
        if (hi - lo == 1) {
            leaf[lo] = id;
            return id;
        }
        int mid = lo + (hi - lo) / 2;
        int l = build(lo, mid, id, depth + 1, parent);
        int r = build(mid, hi, id, depth + 1, parent);
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }

    int lca(int a, int b) const {
        if (nodes[a].depth < nodes[b].depth) std::swap(a, b);
        int diff = nodes[a].depth - nodes[b].depth;
        for (int j = 0; diff; ++j, diff >>= 1)
            if (diff & 1) a = up[j][a];
        if (a == b) return a;
        for (int j = static_cast<int>(up.size()) - 1; j >= 0; --j)
            if (up[j][a] != up[j][b]) {
                a = up[j][a];
                b = up[j][b];
            }
        return up[0][a];
    }
};

struct Partial {
    CliqueDecomposition dec;
    std::vector<Edge> v0_edges;  // edges of G[v0]
};

Partial solve_node(const RecursionTree& tree, int id, int k, int parallel_depth) {
    const auto& node = tree.nodes[id];
    VertexSet pool;
    std::vector<Edge> edges;
    std::vector<VertexSet> cliques;
    if (node.left < 0) {
        pool.push_back(node.lo);
    } else {
        Partial l, r;
        if (node.depth < parallel_depth) {
            auto right = std::async(std::launch::async, solve_node, std::cref(tree), node.right, k, parallel_depth);
            l = solve_node(tree, node.left, k, parallel_depth);
            r = right.get();
        } else {
            l = solve_node(tree, node.left, k, parallel_depth);
            r = solve_node(tree, node.right, k, parallel_depth);
        }
        // Left subtree first keeps the merge deterministic.
        pool = std::move(l.dec.v0);
        pool.insert(pool.end(), r.dec.v0.begin(), r.dec.v0.end());
        cliques = std::move(l.dec.cliques);
        cliques.insert(cliques.end(), r.dec.cliques.begin(), r.dec.cliques.end());
        edges = std::move(l.v0_edges);
        edges.insert(edges.end(), r.v0_edges.begin(), r.v0_edges.end());
        for (const auto& e : tree.routed[id])
            if (std::binary_search(pool.begin(), pool.end(), e.first) && std::binary_search(pool.begin(), pool.end(), e.second))
                edges.push_back(e);
    }

    auto local = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(pool.begin(), pool.end(), v) - pool.begin()); };
    std::vector<Edge> local_edges;
    local_edges.reserve(edges.size());
    for (const auto& [u, v] : edges) local_edges.emplace_back(local(u), local(v));
    auto sub = Graph::from_edges(static_cast<int>(pool.size()), local_edges);
    auto dec = decompose_local(sub, k);

    Partial out;
    for (Vertex v : dec.v0) out.dec.v0.push_back(pool[v]);
    out.dec.cliques = std::move(cliques);
    for (auto& c : dec.cliques) {
        for (auto& v : c) v = pool[v];
        out.dec.cliques.push_back(std::move(c));
    }
    for (const auto& e : edges)
        if (std::binary_search(out.dec.v0.begin(), out.dec.v0.end(), e.first) &&
            std::binary_search(out.dec.v0.begin(), out.dec.v0.end(), e.second))
            out.v0_edges.push_back(e);
    return out;
}

VertexSet map_back(const InducedSubgraph& sub, const VertexSet& local) {
    VertexSet out;
    for (Vertex v : local) out.push_back(sub.to_parent[v]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CliqueDecomposition clique_decomposition_degeneracy(const Graph& g, int k) {
    if (k < 1) throw InputError("k must be at least 1");
    return decompose_local(g, k);
}

CliqueDecomposition clique_decomposition_divide_conquer(const Graph& g, int k, bool parallel) {
    if (k < 1) throw InputError("k must be at least 1");
    if (g.order() == 0) return {};
    RecursionTree tree(g.order());
    for (const auto& e : g.edges()) tree.routed[tree.lca(tree.leaf[e.first], tree.leaf[e.second])].push_back(e);
    const int depth = parallel ? std::max(0, std::min(3, static_cast<int>(std::thread::hardware_concurrency()) / 2)) : 0;
    return solve_node(tree, 0, k, depth).dec;
}

BicliqueDecomposition biclique_decomposition(const Graph& g, int k, std::uint64_t node_limit) {
    if (k < 1) throw InputError("k must be at least 1");
    BicliqueDecomposition out;
    const int n = g.order();
    std::vector<char> in_v0(static_cast<std::size_t>(n), 0);
    BicliqueSearch search(g, in_v0, k, node_limit);
    for (Vertex v = 0; v < n; ++v) {
        auto found = search.anchored(v);
        if (!found) {
            in_v0[v] = 1;
            continue;
        }
        for (Vertex u : found->first) in_v0[u] = 0;
        for (Vertex u : found->second) in_v0[u] = 0;
        out.bicliques.push_back(std::move(*found));
    }
    for (Vertex v = 0; v < n; ++v)
        if (in_v0[v]) out.v0.push_back(v);
    return out;
}

std::optional<VertexSet> find_clique(const Graph& g, const std::vector<char>& inside, int k) {
    if (k <= 0) return VertexSet{};
    auto deg = degeneracy_ordering(g);
    for (Vertex v = 0; v < g.order(); ++v) {
        if (!inside[v]) continue;
        std::vector<Vertex> cand;
        for (Vertex u : deg.back[v])
            if (inside[u]) cand.push_back(u);
        if (auto c = clique_among(g, std::move(cand), k - 1)) {
            c->insert(std::upper_bound(c->begin(), c->end(), v), v);
            return c;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<VertexSet, VertexSet>> find_biclique(const Graph& g, const std::vector<char>& inside, int k,
                                                             std::uint64_t node_limit) {
    BicliqueSearch search(g, inside, k, node_limit);
    for (Vertex v = 0; v < g.order(); ++v)
        if (inside[v])
            if (auto found = search.anchored(v)) return found;
    return std::nullopt;
}

namespace {

// Checks that parts and v0 partition V(G); fills owner.
DecompositionAudit check_partition(int n, const VertexSet& v0, const std::vector<VertexSet>& parts) {
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    auto mark = [&](Vertex v) {
        if (v < 0 || v >= n) return false;
        return ++seen[v] == 1;
    };
    for (Vertex v : v0)
        if (!mark(v)) return {false, "vertex " + std::to_string(v) + " repeated or out of range"};
    for (const auto& p : parts)
        for (Vertex v : p)
            if (!mark(v)) return {false, "vertex " + std::to_string(v) + " repeated or out of range"};
    for (Vertex v = 0; v < n; ++v)
        if (!seen[v]) return {false, "vertex " + std::to_string(v) + " not covered"};
    return {};
}

}  // namespace

DecompositionAudit audit_decomposition(const Graph& g, const CliqueDecomposition& d, int k) {
    auto res = check_partition(g.order(), d.v0, d.cliques);
    if (!res.valid) return res;
    for (const auto& c : d.cliques) {
        if (static_cast<int>(c.size()) != k) return {false, "clique part of wrong size"};
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!g.adjacent(c[i], c[j])) return {false, "clique part is not complete"};
    }
    std::vector<char> inside(static_cast<std::size_t>(g.order()), 0);
    for (Vertex v : d.v0) inside[v] = 1;
    if (find_clique(g, inside, k)) return {false, "v0 contains a k-clique"};
    return {};
}

DecompositionAudit audit_decomposition(const Graph& g, const BicliqueDecomposition& d, int k) {
    std::vector<VertexSet> parts;
    for (const auto& [a, b] : d.bicliques) {
        if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != k) return {false, "biclique side of wrong size"};
        for (Vertex u : a)
            for (Vertex v : b)
                if (!g.adjacent(u, v)) return {false, "biclique part misses a cross edge"};
        parts.push_back(a);
        parts.push_back(b);
    }
    auto res = check_partition(g.order(), d.v0, parts);
    if (!res.valid) return res;
    std::vector<char> inside(static_cast<std::size_t>(g.order()), 0);
    for (Vertex v : d.v0) inside[v] = 1;
    if (find_biclique(g, inside, k)) return {false, "v0 contains K_{k,k}"};
    return {};
}

int clique_wrapper_k(const Rational& epsilon, int gamma) {
    if (epsilon <= Rational(0)) throw InputError("epsilon must be positive");
    return static_cast<int>(std::max<std::int64_t>(1, ((Rational(1) + epsilon) / epsilon * Rational(gamma - 1)).ceil()));
}

int biclique_wrapper_k(const Rational& epsilon, int gamma) {
    if (epsilon <= Rational(0)) throw InputError("epsilon must be positive");
    return static_cast<int>(std::max<std::int64_t>(1, ((Rational(2) + epsilon) / epsilon * Rational(gamma - 1)).ceil()));
}

bool is_bipartite(const Graph& g) {
    std::vector<int> side(static_cast<std::size_t>(g.order()), -1);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        queue.assign(1, s);
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (Vertex w : g.neighbors(queue[h])) {
                if (side[w] < 0) {
                    side[w] = 1 - side[queue[h]];
                    queue.push_back(w);
                } else if (side[w] == side[queue[h]]) {
                    return false;
                }
            }
    }
    return true;
}

namespace {

Solution wrap(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner,
              const VertexSet& v0, const std::vector<VertexSet>& parts, std::string name, int k, Stopwatch& clock) {
    auto sub = induced_subgraph(g, v0);
    Solution s0 = inner(sub.graph, fs, epsilon);
    Solution sol;
    sol.timings_ms["inner"] = clock.lap();
    sol.vertices = map_back(sub, s0.vertices);
    for (const auto& p : parts) sol.vertices.insert(sol.vertices.end(), p.begin(), p.end());
    std::sort(sol.vertices.begin(), sol.vertices.end());
    sol.solver = std::move(name) + "+" + s0.solver;
    sol.params["epsilon"] = epsilon.str();
    sol.params["k"] = std::to_string(k);
    sol.params["v0"] = std::to_string(v0.size());
    sol.params["inner_size"] = std::to_string(s0.size());
    for (const auto& [key, value] : s0.params) sol.params["inner." + key] = value;
    certify(sol, g, fs);
    sol.timings_ms["verify"] = clock.lap();
    return sol;
}

}  // namespace

Solution clique_wrapper_hitting(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner) {
    if (fs.mode == Mode::Induced) throw InputError("the clique wrapper does not apply to induced subgraph hitting");
    Stopwatch clock;
    const int k = clique_wrapper_k(epsilon, fs.gamma);
    auto dec = clique_decomposition_degeneracy(g, k);
    double t = clock.lap();
    auto sol = wrap(g, fs, epsilon, inner, dec.v0, dec.cliques, "clique-wrapper", k, clock);
    sol.timings_ms["decompose"] = t;
    sol.params["parts"] = std::to_string(dec.cliques.size());
    return sol;
}

Solution biclique_wrapper_hitting(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner) {
    if (fs.mode == Mode::Induced) throw InputError("the biclique wrapper does not apply to induced subgraph hitting");
    int gamma = 0;
    for (const auto& p : fs.patterns)
        if (is_bipartite(p.graph) && (gamma == 0 || p.order() < gamma)) gamma = p.order();
    if (gamma == 0) throw InputError("the biclique wrapper needs a bipartite pattern");
    Stopwatch clock;
    const int k = biclique_wrapper_k(epsilon, gamma);
    auto dec = biclique_decomposition(g, k);
    std::vector<VertexSet> parts;
    for (const auto& [a, b] : dec.bicliques) {
        parts.push_back(a);
        parts.push_back(b);
    }
    double t = clock.lap();
    auto sol = wrap(g, fs, epsilon, inner, dec.v0, parts, "biclique-wrapper", k, clock);
    sol.timings_ms["decompose"] = t;
    sol.params["parts"] = std::to_string(dec.bicliques.size());
    sol.params["gamma"] = std::to_string(gamma);
    return sol;
}

namespace {

bool embed(const Graph& g, const Graph& h, const std::vector<Vertex>& order, std::size_t pos, std::vector<Vertex>& image,
           std::vector<char>& used) {
    if (pos == order.size()) return true;
    const Vertex p = order[pos];
    Vertex anchor = -1;
    for (Vertex q : h.neighbors(p))
        if (image[q] >= 0) {
            anchor = q;
            break;
        }
    auto try_vertex = [&](Vertex x) {
        if (used[x] || g.degree(x) < h.degree(p)) return false;
        for (Vertex q : h.neighbors(p))
            if (image[q] >= 0 && !g.adjacent(image[q], x)) return false;
        image[p] = x;
        used[x] = 1;
        if (embed(g, h, order, pos + 1, image, used)) return true;
        used[x] = 0;
        image[p] = -1;
        return false;
    };
    if (anchor >= 0) {
        for (Vertex x : g.neighbors(image[anchor]))
            if (try_vertex(x)) return true;
    } else {
        for (Vertex x = 0; x < g.order(); ++x)
            if (try_vertex(x)) return true;
    }
    return false;
}

}  // namespace

std::optional<std::vector<Vertex>> k_subgraph_isomorphism(const Graph& g, const Graph& h, int k) {
    if (h.order() > k) throw InputError("pattern has more than k vertices");
    if (h.order() == 0) return std::vector<Vertex>{};
    auto dec = clique_decomposition_degeneracy(g, k);
    if (!dec.cliques.empty()) {
        const auto& c = dec.cliques.front();
        return std::vector<Vertex>(c.begin(), c.begin() + h.order());
    }
    // BFS order per component so that every later vertex has a placed neighbour when possible.
    std::vector<Vertex> order;
    std::vector<char> seen(static_cast<std::size_t>(h.order()), 0);
    for (Vertex s = 0; s < h.order(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        for (; head < order.size(); ++head)
            for (Vertex w : h.neighbors(order[head]))
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
    }
    std::vector<Vertex> image(static_cast<std::size_t>(h.order()), -1);
    std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
    if (!embed(g, h, order, 0, image, used)) return std::nullopt;
    return image;
}

}  // namespace sparsehit
