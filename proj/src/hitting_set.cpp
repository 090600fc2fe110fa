#include "sparsehit/hitting_set.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "sparsehit/errors.hpp"

namespace sparsehit {

namespace {

struct SetHash {
    std::size_t operator()(const std::vector<int>& s) const {
        std::size_t h = s.size();
        for (int v : s) h = h * 1000003u ^ static_cast<std::size_t>(v);
        return h;
    }
};

// Drops duplicates and any set that contains another set of the family.
std::vector<std::vector<int>> minimal_sets(std::vector<std::vector<int>> sets) {
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::unordered_set<std::vector<int>, SetHash> kept;
    std::vector<std::vector<int>> out;
    std::vector<int> sub;
    for (auto& s : sets) {
        bool redundant = false;
        if (s.size() <= 12) {
            for (std::uint32_t mask = 1; mask + 1 < (1u << s.size()) && !redundant; ++mask) {
                sub.clear();
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (mask >> i & 1u) sub.push_back(s[i]);
                redundant = kept.count(sub) != 0;
            }
        }
        if (redundant) continue;
        kept.insert(s);
        out.push_back(std::move(s));
    }
    return out;
}

class BranchAndBound {
public:
    BranchAndBound(std::vector<std::vector<int>> sets, int n, std::uint64_t& nodes, std::uint64_t node_limit)
        : sets_(std::move(sets)), of_vertex_(static_cast<std::size_t>(n)), hits_(sets_.size(), 0),
          state_(static_cast<std::size_t>(n), 0), mark_(static_cast<std::size_t>(n), 0), nodes_(nodes),
          node_limit_(node_limit) {
        for (std::size_t s = 0; s < sets_.size(); ++s)
            for (int v : sets_[s]) of_vertex_[v].push_back(static_cast<int>(s));
    }

    // Optimum if it is at most cap, otherwise nullopt.
    std::optional<std::vector<int>> solve(std::size_t cap) {
        best_ = greedy();
        bar_ = best_.size() <= cap ? best_.size() : cap + 1;
        have_ = best_.size() <= cap;
        search();
        if (!have_) return std::nullopt;
        return best_;
    }

    std::size_t packing_bound() {
        ++stamp_;
        std::size_t count = 0;
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            if (hits_[s]) continue;
            bool clash = false;
            for (int v : sets_[s])
                if (state_[v] == 0 && mark_[v] == stamp_) clash = true;
            if (clash) continue;
            for (int v : sets_[s])
                if (state_[v] == 0) mark_[v] = stamp_;
            ++count;
        }
        return count;
    }

private:
    std::vector<int> greedy() {
        std::vector<int> hit(sets_.size(), 0), chosen;
        std::size_t remaining = sets_.size();
        std::vector<int> score(of_vertex_.size());
        while (remaining > 0) {
            for (std::size_t v = 0; v < of_vertex_.size(); ++v) {
                score[v] = 0;
                for (int s : of_vertex_[v]) score[v] += !hit[s];
            }
            int v = static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
            chosen.push_back(v);
            for (int s : of_vertex_[v])
                if (!hit[s]) hit[s] = 1, --remaining;
        }
        // Drop vertices that became redundant.
        std::vector<int> cover(sets_.size(), 0);
        for (int v : chosen)
            for (int s : of_vertex_[v]) ++cover[s];
        std::vector<int> kept;
        for (int v : chosen) {
            bool needed = std::any_of(of_vertex_[v].begin(), of_vertex_[v].end(), [&](int s) { return cover[s] == 1; });
            if (needed)
                kept.push_back(v);
            else
                for (int s : of_vertex_[v]) --cover[s];
        }
        return kept;
    }

    void include(int v) {
        state_[v] = 1;
        chosen_.push_back(v);
        for (int s : of_vertex_[v]) ++hits_[s];
    }

    void undo_include(int v) {
        state_[v] = 0;
        chosen_.pop_back();
        for (int s : of_vertex_[v]) --hits_[s];
    }

    void search() {
        // Each node is charged for the sets it scans, so huge families cannot hide behind a small node count.
        nodes_ += 1 + sets_.size() / 256;
        if (nodes_ > node_limit_) throw BudgetExceeded("exact hitting-set search exceeded its node budget");
        int pick = -1;
        std::size_t pick_free = std::numeric_limits<std::size_t>::max();
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            if (hits_[s]) continue;
            std::size_t free = 0;
            for (int v : sets_[s]) free += state_[v] == 0;
            if (free == 0) return;
            if (free < pick_free) pick = static_cast<int>(s), pick_free = free;
        }
        if (pick < 0) {
            if (chosen_.size() < bar_) {
                best_ = chosen_;
                bar_ = chosen_.size();
                have_ = true;
            }
            return;
        }
        if (chosen_.size() + 1 >= bar_) return;
        if (chosen_.size() + packing_bound() >= bar_) return;
        if (split()) return;

        // Among the smallest open sets, branch on the one holding the busiest free vertex.
        std::size_t pick_degree = 0;
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            if (hits_[s]) continue;
            std::size_t free = 0, busiest = 0;
            for (int v : sets_[s])
                if (state_[v] == 0) ++free, busiest = std::max(busiest, open_degree(v));
            if (free == pick_free && busiest > pick_degree) pick = static_cast<int>(s), pick_degree = busiest;
        }
        std::vector<int> options;
        for (int v : sets_[pick])
            if (state_[v] == 0) options.push_back(v);
        std::stable_sort(options.begin(), options.end(), [&](int a, int b) { return open_degree(a) > open_degree(b); });
        std::vector<int> excluded;
        for (int v : options) {
            include(v);
            search();
            undo_include(v);
            state_[v] = 2;
            excluded.push_back(v);
            if (chosen_.size() + 1 >= bar_) break;
        }
        for (int v : excluded) state_[v] = 0;
    }

    // When the open sets fall apart into independent parts, solve each part on its own.
    // Returns false (and does nothing) when the residual instance is connected.
    bool split() {
        const int n = static_cast<int>(state_.size());
        parent_.resize(static_cast<std::size_t>(n));
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            if (hits_[s]) continue;
            for (int v : sets_[s])
                if (state_[v] == 0) parent_[v] = v;
        }
        int first_root = -1;
        bool several = false;
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            if (hits_[s]) continue;
            int anchor = -1;
            for (int v : sets_[s]) {
                if (state_[v] != 0) continue;
                if (anchor < 0) anchor = root(v);
                else parent_[root(v)] = anchor;
            }
        }
        for (std::size_t s = 0; s < sets_.size() && !several; ++s) {
            if (hits_[s]) continue;
            for (int v : sets_[s])
                if (state_[v] == 0) {
                    int r = root(v);
                    if (first_root < 0) first_root = r;
                    else if (r != first_root) several = true;
                    break;
                }
        }
        if (!several) return false;

        std::unordered_map<int, std::size_t> part_of;
        std::vector<std::vector<std::vector<int>>> part_sets;
        std::vector<std::vector<int>> part_ids;
        std::vector<std::unordered_map<int, int>> relabel;
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            if (hits_[s]) continue;
            int r = -1;
            for (int v : sets_[s])
                if (state_[v] == 0) {
                    r = root(v);
                    break;
                }
            auto [it, fresh] = part_of.try_emplace(r, part_sets.size());
            if (fresh) {
                part_sets.emplace_back();
                part_ids.emplace_back();
                relabel.emplace_back();
            }
            const std::size_t p = it->second;
            std::vector<int> t;
            for (int v : sets_[s]) {
                if (state_[v] != 0) continue;
                auto [jt, added] = relabel[p].try_emplace(v, static_cast<int>(part_ids[p].size()));
                if (added) part_ids[p].push_back(v);
                t.push_back(jt->second);
            }
            part_sets[p].push_back(std::move(t));
        }

        std::vector<BranchAndBound> solvers;
        std::vector<std::size_t> lower;
        std::size_t lower_total = 0;
        for (std::size_t p = 0; p < part_sets.size(); ++p) {
            solvers.emplace_back(std::move(part_sets[p]), static_cast<int>(part_ids[p].size()), nodes_, node_limit_);
            lower.push_back(solvers.back().packing_bound());
            lower_total += lower.back();
        }
        // Improve on bar_ means using at most bar_ - 1 - |chosen| more vertices.
        std::size_t room = bar_ - 1 - chosen_.size();
        if (lower_total > room) return true;
        std::vector<int> extra;
        for (std::size_t p = 0; p < solvers.size(); ++p) {
            lower_total -= lower[p];
            auto sol = solvers[p].solve(room - extra.size() - lower_total);
            if (!sol) return true;
            for (int v : *sol) extra.push_back(part_ids[p][v]);
        }
        best_ = chosen_;
        best_.insert(best_.end(), extra.begin(), extra.end());
        bar_ = best_.size();
        have_ = true;
        return true;
    }

    int root(int v) {
        while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
        return v;
    }

    std::size_t open_degree(int v) const {
        std::size_t d = 0;
        for (int s : of_vertex_[v]) d += hits_[s] == 0;
        return d;
    }

    std::vector<std::vector<int>> sets_;
    std::vector<std::vector<int>> of_vertex_;
    std::vector<int> hits_;
    std::vector<char> state_;  // 0 free, 1 chosen, 2 excluded
    std::vector<std::uint64_t> mark_;
    std::uint64_t stamp_ = 0;
    std::vector<int> chosen_, best_;
    std::vector<int> parent_;
    std::size_t bar_ = 0;
    bool have_ = false;
    std::uint64_t& nodes_;
    std::uint64_t node_limit_;
};

}  // namespace

std::optional<VertexSet> min_hitting_set(std::span<const VertexSet> input, const HittingSetOptions& options) {
    for (const auto& s : input)
        if (s.empty()) throw InputError("cannot hit an empty set");

    std::unordered_map<Vertex, int> local;
    std::vector<Vertex> global;
    std::vector<std::vector<int>> sets;
    for (const auto& s : input) {
        std::vector<int> t;
        for (Vertex v : s) {
            auto [it, inserted] = local.try_emplace(v, static_cast<int>(global.size()));
            if (inserted) global.push_back(v);
            t.push_back(it->second);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        sets.push_back(std::move(t));
    }
    sets = minimal_sets(std::move(sets));

    // Components of the hypergraph are solved independently.
    const int n = static_cast<int>(global.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& s : sets)
        for (std::size_t i = 1; i < s.size(); ++i) parent[find(s[i])] = find(s[0]);
    std::unordered_map<int, std::vector<std::size_t>> groups;
    std::vector<int> roots;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        int r = find(sets[i][0]);
        auto [it, inserted] = groups.try_emplace(r);
        if (inserted) roots.push_back(r);
        it->second.push_back(i);
    }

    struct Part {
        std::vector<std::vector<int>> sets;
        std::vector<Vertex> ids;
        std::size_t lower = 0;
    };
    std::vector<Part> parts;
    std::size_t lower_total = 0;
    for (int r : roots) {
        Part p;
        std::unordered_map<int, int> relabel;
        for (std::size_t i : groups[r]) {
            std::vector<int> t;
            for (int v : sets[i]) {
                auto [it, inserted] = relabel.try_emplace(v, static_cast<int>(p.ids.size()));
                if (inserted) p.ids.push_back(global[v]);
                t.push_back(it->second);
            }
            p.sets.push_back(std::move(t));
        }
        std::vector<VertexSet> as_sets;
        for (const auto& s : p.sets) as_sets.emplace_back(s.begin(), s.end());
        p.lower = disjoint_lower_bound(as_sets);
        lower_total += p.lower;
        parts.push_back(std::move(p));
    }
    const std::size_t cap = options.max_size.value_or(std::numeric_limits<std::size_t>::max() / 4);
    if (lower_total > cap) return std::nullopt;

    VertexSet out;
    std::uint64_t nodes = 0;
    std::size_t spent = 0;
    for (auto& p : parts) {
        lower_total -= p.lower;
        std::size_t part_cap = cap - spent - lower_total;
        BranchAndBound bb(std::move(p.sets), static_cast<int>(p.ids.size()), nodes, options.node_limit);
        auto sol = bb.solve(part_cap);
        if (!sol) return std::nullopt;
        spent += sol->size();
        for (int v : *sol) out.push_back(p.ids[v]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t disjoint_lower_bound(std::span<const VertexSet> sets) {
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sets[a].size() < sets[b].size(); });
    std::unordered_set<Vertex> used;
    std::size_t count = 0;
    for (std::size_t i : order) {
        if (std::any_of(sets[i].begin(), sets[i].end(), [&](Vertex v) { return used.count(v) != 0; })) continue;
        used.insert(sets[i].begin(), sets[i].end());
        ++count;
    }
    return count;
}

}  // namespace sparsehit
