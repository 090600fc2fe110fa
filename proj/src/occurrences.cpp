#include "sparsehit/occurrences.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "sparsehit/errors.hpp"

namespace sparsehit {

OccurrenceIndex::OccurrenceIndex(int n, std::vector<VertexSet> sets, std::vector<int> pattern)
    : n_(n), pattern_(std::move(pattern)) {
    std::vector<std::size_t> count(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& s : sets) {
        data_.insert(data_.end(), s.begin(), s.end());
        offsets_.push_back(data_.size());
        for (Vertex v : s) ++count[v + 1];
    }
    vertex_offsets_.assign(count.size(), 0);
    for (std::size_t v = 1; v < count.size(); ++v) vertex_offsets_[v] = vertex_offsets_[v - 1] + count[v];
    incidence_.resize(vertex_offsets_.back());
    std::vector<std::size_t> fill(vertex_offsets_.begin(), vertex_offsets_.end() - 1);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (Vertex v : sets[i]) incidence_[fill[v]++] = static_cast<std::uint32_t>(i);
}

std::vector<VertexSet> OccurrenceIndex::sets() const {
    std::vector<VertexSet> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back((*this)[i].begin(), (*this)[i].end());
    return out;
}

namespace {

using Tagged = std::pair<VertexSet, int>;

[[noreturn]] void over_budget(std::size_t budget) {
    throw BudgetExceeded("more than " + std::to_string(budget) +
                         " occurrences; instance is beyond exhaustive enumeration");
}

// Matching plan for a connected pattern started at one of its vertices.
struct Plan {
    std::vector<int> order;                  // pattern vertex per position
    std::vector<int> parent;                 // earlier position adjacent to this one
    std::vector<std::vector<int>> edges_to;  // earlier positions that must be adjacent
    std::vector<std::vector<int>> non_edges_to;
    std::vector<int> degree;
};

Plan make_plan(const Graph& p, int start) {
    Plan plan;
    const int k = p.order();
    std::vector<int> pos(static_cast<std::size_t>(k), -1);
    plan.order.push_back(start);
    pos[start] = 0;
    plan.parent.push_back(-1);
    for (std::size_t h = 0; h < plan.order.size(); ++h)
        for (Vertex w : p.neighbors(plan.order[h]))
            if (pos[w] < 0) {
                pos[w] = static_cast<int>(plan.order.size());
                plan.order.push_back(w);
                plan.parent.push_back(static_cast<int>(h));
            }
    plan.edges_to.resize(static_cast<std::size_t>(k));
    plan.non_edges_to.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        plan.degree.push_back(p.degree(plan.order[i]));
        for (int j = 0; j < i; ++j) {
            if (j == plan.parent[i]) continue;
            (p.adjacent(plan.order[i], plan.order[j]) ? plan.edges_to : plan.non_edges_to)[i].push_back(j);
        }
    }
    return plan;
}

class ConnectedMatcher {
public:
    ConnectedMatcher(const Graph& g, const Graph& p, bool induced) : g_(g), induced_(induced) {
        for (int s = 0; s < p.order(); ++s) plans_.push_back(make_plan(p, s));
        image_.resize(static_cast<std::size_t>(p.order()));
        used_.assign(static_cast<std::size_t>(g.order()), 0);
    }

    // Appends every vertex set whose smallest vertex is `anchor`.
    void run(Vertex anchor, int tag, std::vector<Tagged>& out) {
        anchor_ = anchor;
        tag_ = tag;
        out_ = &out;
        for (const Plan& plan : plans_) {
            if (g_.degree(anchor) < plan.degree[0]) continue;
            plan_ = &plan;
            image_[0] = anchor;
            used_[anchor] = 1;
            extend(1);
            used_[anchor] = 0;
        }
    }

private:
    void extend(std::size_t i) {
        const Plan& plan = *plan_;
        if (i == plan.order.size()) {
            VertexSet s(image_.begin(), image_.end());
            std::sort(s.begin(), s.end());
            out_->emplace_back(std::move(s), tag_);
            return;
        }
        for (Vertex w : g_.neighbors(image_[plan.parent[i]])) {
            if (w <= anchor_ || used_[w] || g_.degree(w) < plan.degree[i]) continue;
            bool ok = true;
            for (int j : plan.edges_to[i])
                if (!g_.adjacent(w, image_[j])) {
                    ok = false;
                    break;
                }
            if (ok && induced_)
                for (int j : plan.non_edges_to[i])
                    if (g_.adjacent(w, image_[j])) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            image_[i] = w;
            used_[w] = 1;
            extend(i + 1);
            used_[w] = 0;
        }
    }

    const Graph& g_;
    bool induced_;
    std::vector<Plan> plans_;
    const Plan* plan_ = nullptr;
    std::vector<Vertex> image_;
    std::vector<char> used_;
    Vertex anchor_ = 0;
    int tag_ = 0;
    std::vector<Tagged>* out_ = nullptr;
};

void dedupe(std::vector<Tagged>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](const Tagged& a, const Tagged& b) { return a.first == b.first; }),
            v.end());
}

std::vector<VertexSet> connected_sets(const Graph& g, const Graph& p, bool induced) {
    if (p.order() == 1) {
        std::vector<VertexSet> out;
        for (Vertex v = 0; v < g.order(); ++v) out.push_back({v});
        return out;
    }
    ConnectedMatcher matcher(g, p, induced);
    std::vector<Tagged> found;
    std::vector<VertexSet> out;
    for (Vertex a = 0; a < g.order(); ++a) {
        found.clear();
        matcher.run(a, 0, found);
        dedupe(found);
        for (auto& t : found) out.push_back(std::move(t.first));
    }
    return out;
}

// Unions of pairwise disjoint component occurrences; induced mode also forbids edges between them.
void compose(const Graph& g, const Pattern& pattern, int tag, bool induced, std::size_t budget,
             std::vector<Tagged>& out) {
    auto comps = component_graphs(pattern.graph);
    std::sort(comps.begin(), comps.end(), [](const Graph& a, const Graph& b) {
        return std::pair(a.order(), canonical_code(a)) < std::pair(b.order(), canonical_code(b));
    });
    std::vector<std::vector<VertexSet>> lists;
    std::vector<char> same_as_prev;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        lists.push_back(connected_sets(g, comps[i], induced));
        same_as_prev.push_back(i > 0 && isomorphic(comps[i], comps[i - 1]));
    }
    std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
    std::vector<std::size_t> chosen(comps.size());
    std::size_t raw = 0;

    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == comps.size()) {
            if (++raw > 4 * budget) over_budget(budget);
            VertexSet u;
            for (std::size_t c = 0; c < comps.size(); ++c) u.insert(u.end(), lists[c][chosen[c]].begin(), lists[c][chosen[c]].end());
            std::sort(u.begin(), u.end());
            out.emplace_back(std::move(u), tag);
            return;
        }
        std::size_t from = same_as_prev[i] ? chosen[i - 1] + 1 : 0;
        for (std::size_t s = from; s < lists[i].size(); ++s) {
            const VertexSet& set = lists[i][s];
            bool ok = std::none_of(set.begin(), set.end(), [&](Vertex v) { return used[v] != 0; });
            if (ok && induced)
                for (Vertex v : set) {
                    for (Vertex w : g.neighbors(v))
                        if (used[w]) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
            if (!ok) continue;
            for (Vertex v : set) used[v] = 1;
            chosen[i] = s;
            go(i + 1);
            for (Vertex v : set) used[v] = 0;
        }
    };
    go(0);
}

}  // namespace

OccurrenceIndex enumerate_occurrences(const Graph& g, const PatternSet& fs, EnumerationOptions options) {
    const bool induced = fs.mode == Mode::Induced;
    std::vector<Tagged> all;

    std::vector<std::pair<int, ConnectedMatcher>> matchers;
    for (std::size_t i = 0; i < fs.patterns.size(); ++i)
        if (fs.patterns[i].connected) matchers.emplace_back(static_cast<int>(i), ConnectedMatcher(g, fs.patterns[i].graph, induced));

    std::vector<Tagged> local;
    for (Vertex a = 0; a < g.order() && !matchers.empty(); ++a) {
        local.clear();
        for (auto& [tag, m] : matchers) m.run(a, tag, local);
        dedupe(local);
        for (auto& t : local) all.push_back(std::move(t));
        if (all.size() > options.budget) over_budget(options.budget);
    }
    for (std::size_t i = 0; i < fs.patterns.size(); ++i)
        if (!fs.patterns[i].connected) compose(g, fs.patterns[i], static_cast<int>(i), induced, options.budget, all);

    dedupe(all);
    if (all.size() > options.budget) over_budget(options.budget);
    std::vector<VertexSet> sets;
    std::vector<int> tags;
    sets.reserve(all.size());
    tags.reserve(all.size());
    for (auto& [s, t] : all) {
        sets.push_back(std::move(s));
        tags.push_back(t);
    }
    return OccurrenceIndex(g.order(), std::move(sets), std::move(tags));
}

VertexSet irrelevant_vertices(const Graph& g, const OccurrenceIndex& idx) {
    VertexSet out;
    for (Vertex v = 0; v < g.order(); ++v)
        if (idx.containing(v).empty()) out.push_back(v);
    return out;
}

std::vector<std::uint32_t> surviving_occurrences(const OccurrenceIndex& idx, const std::vector<char>& alive) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        auto s = idx[i];
        if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return alive[v] != 0; }))
            out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

}  // namespace sparsehit
