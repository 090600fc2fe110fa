#include "sparsehit/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace sparsehit {

VertexOrdering VertexOrdering::from_order(std::vector<Vertex> order) {
    VertexOrdering o;
    o.rank.assign(order.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] < 0 || static_cast<std::size_t>(order[i]) >= order.size() || o.rank[order[i]] != -1)
            throw std::invalid_argument("ordering is not a permutation");
        o.rank[order[i]] = static_cast<int>(i);
    }
    o.order = std::move(order);
    return o;
}

VertexOrdering VertexOrdering::identity(int n) {
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return from_order(std::move(order));
}

namespace {

// Repeatedly removes a minimum-degree vertex (smallest id on ties).
std::pair<std::vector<Vertex>, int> peel(const Graph& g) {
    const int n = g.order();
    std::vector<int> deg(static_cast<std::size_t>(n));
    // ties go to the lower original degree, so hubs end up late and weakly reach little
    std::set<std::tuple<int, int, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], g.degree(v), v);
    }
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(n));
    int d = 0;
    while (!queue.empty()) {
        auto [k, ignored, v] = *queue.begin();
        (void)ignored;
        queue.erase(queue.begin());
        d = std::max(d, k);
        removed[v] = 1;
        out.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (removed[w]) continue;
            queue.erase({deg[w], g.degree(w), w});
            queue.emplace(--deg[w], g.degree(w), w);
        }
    }
    return {out, d};
}

}  // namespace

DegeneracyResult degeneracy_ordering(const Graph& g) {
    auto [peeled, d] = peel(g);
    std::reverse(peeled.begin(), peeled.end());
    DegeneracyResult res;
    res.ordering = VertexOrdering::from_order(std::move(peeled));
    res.degeneracy = d;
    res.back.resize(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v)
        for (Vertex w : g.neighbors(v))
            if (res.ordering.before(w, v)) res.back[v].push_back(w);
    return res;
}

WeakReachability weak_reachability(const Graph& g, const VertexOrdering& sigma, int r, std::vector<int>* profile) {
    if (r < 0) throw std::invalid_argument("radius must be non-negative");
    const int n = g.order();
    WeakReachability wr;
    wr.radius = r;
    wr.sets.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) wr.sets[v] = {v};
    if (profile) profile->assign(1, n > 0 ? 1 : 0);

    std::vector<Vertex> mark(static_cast<std::size_t>(n), -1);
    for (int i = 1; i <= r; ++i) {
        std::vector<VertexSet> next(static_cast<std::size_t>(n));
        int best = 0;
        for (Vertex v = 0; v < n; ++v) {
            VertexSet& out = next[v];
            auto absorb = [&](const VertexSet& from) {
                for (Vertex x : from)
                    if (mark[x] != v && !sigma.before(x, v)) {
                        mark[x] = v;
                        out.push_back(x);
                    }
            };
            absorb(wr.sets[v]);
            for (Vertex u : g.neighbors(v)) absorb(wr.sets[u]);
            std::sort(out.begin(), out.end());
            best = std::max(best, static_cast<int>(out.size()));
        }
        std::fill(mark.begin(), mark.end(), -1);
        wr.sets = std::move(next);
        if (profile) profile->push_back(best);
    }
    return wr;
}

void measure_wcol(const Graph& g, VertexOrdering& sigma, int r) {
    weak_reachability(g, sigma, r, &sigma.wcol);
    sigma.radius = r;
}

VertexOrdering build_ordering(const Graph& g, int r) {
    if (r < 1) throw std::invalid_argument("radius must be at least 1");
    VertexOrdering sigma = VertexOrdering::from_order(peel(g).first);
    measure_wcol(g, sigma, r);
    return sigma;
}

}  // namespace sparsehit
