#include "sparsehit/sunflower.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "sparsehit/errors.hpp"

namespace sparsehit {

namespace {

struct SetHash {
    std::size_t operator()(const VertexSet& s) const {
        std::size_t h = s.size();
        for (Vertex v : s) h = h * 1000003u ^ static_cast<std::size_t>(v);
        return h;
    }
};

bool disjoint(const VertexSet& a, const VertexSet& b) {
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return false;
        *i < *j ? ++i : ++j;
    }
    return true;
}

VertexSet minus(std::span<const Vertex> a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool includes(std::span<const Vertex> big, const VertexSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

template <typename F>
void for_each_subset(std::span<const Vertex> s, F&& f) {
    const std::size_t k = s.size();
    VertexSet sub;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        sub.clear();
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1u) sub.push_back(s[i]);
        f(sub);
    }
}

// Exact maximum packing by branching on the vertices of a greedy maximal packing:
// every set of any packing meets those vertices, and no two share one.
class Packer {
public:
    Packer(std::span<const VertexSet> sets, std::optional<std::size_t> target, std::uint64_t node_limit)
        : sets_(sets), target_(target), node_limit_(node_limit) {}

    PackingResult run() {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < sets_.size(); ++i) {
            if (sets_[i].empty())
                empties_.push_back(i);
            else
                order.push_back(i);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sets_[a].size() < sets_[b].size(); });

        // Greedy maximal packing.
        std::unordered_set<Vertex> used;
        for (std::size_t i : order) {
            if (std::any_of(sets_[i].begin(), sets_[i].end(), [&](Vertex v) { return used.count(v) != 0; })) continue;
            best_.push_back(i);
            used.insert(sets_[i].begin(), sets_[i].end());
        }
        if (reached(best_.size())) return finish(false);

        hubs_.assign(used.begin(), used.end());
        std::sort(hubs_.begin(), hubs_.end());
        if (hubs_.size() <= best_.size() || (target_ && hubs_.size() + empties_.size() < *target_))
            return finish(!target_ || hubs_.size() <= best_.size());

        std::unordered_map<Vertex, int> local;
        for (std::size_t i = 0; i < hubs_.size(); ++i) local[hubs_[i]] = static_cast<int>(i);
        through_.assign(hubs_.size(), {});
        for (std::size_t i : order)
            for (Vertex v : sets_[i])
                if (auto it = local.find(v); it != local.end()) through_[it->second].push_back(i);
        search(0);
        return finish(!stopped_);
    }

private:
    bool reached(std::size_t nonempty) const {
        return target_ && nonempty + empties_.size() >= *target_;
    }

    PackingResult finish(bool exact) {
        PackingResult r;
        r.chosen = best_;
        r.chosen.insert(r.chosen.end(), empties_.begin(), empties_.end());
        std::sort(r.chosen.begin(), r.chosen.end());
        r.exact = exact;
        return r;
    }

    void search(std::size_t h) {
        if (stopped_) return;
        if (++nodes_ > node_limit_) throw BudgetExceeded("disjoint packing search exceeded its node budget");
        while (h < hubs_.size() && taken_.count(hubs_[h])) ++h;
        std::size_t open = 0;
        for (std::size_t i = h; i < hubs_.size(); ++i)
            if (!taken_.count(hubs_[i])) ++open;
        if (current_.size() + open <= best_.size()) return;
        if (h == hubs_.size()) return;
        for (std::size_t i : through_[h]) {
            const VertexSet& s = sets_[i];
            if (std::any_of(s.begin(), s.end(), [&](Vertex v) { return taken_.count(v) != 0; })) continue;
            taken_.insert(s.begin(), s.end());
            current_.push_back(i);
            if (current_.size() > best_.size()) {
                best_ = current_;
                if (reached(best_.size())) stopped_ = true;
            }
            search(h + 1);
            current_.pop_back();
            for (Vertex v : s) taken_.erase(v);
            if (stopped_) return;
        }
        // No chosen set uses this hub.
        taken_.insert(hubs_[h]);
        search(h + 1);
        taken_.erase(hubs_[h]);
    }

    std::span<const VertexSet> sets_;
    std::optional<std::size_t> target_;
    std::uint64_t node_limit_;
    std::uint64_t nodes_ = 0;
    std::vector<std::size_t> empties_;
    std::vector<std::size_t> best_, current_;
    std::vector<Vertex> hubs_;
    std::vector<std::vector<std::size_t>> through_;
    std::unordered_set<Vertex> taken_;
    bool stopped_ = false;
};

}  // namespace

PackingResult max_disjoint_packing(std::span<const VertexSet> sets, std::optional<std::size_t> target,
                                   std::uint64_t node_limit) {
    return Packer(sets, target, node_limit).run();
}

bool is_sunflower(std::span<const VertexSet> family, const Sunflower& s) {
    for (std::size_t i = 0; i < s.members.size(); ++i)
        for (std::size_t j = i + 1; j < s.members.size(); ++j) {
            if (s.members[i] == s.members[j]) return false;
            const VertexSet &a = family[s.members[i]], &b = family[s.members[j]];
            VertexSet common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (common != s.core) return false;
        }
    return true;
}

std::optional<Sunflower> find_sunflower(std::span<const VertexSet> family, int r, std::uint64_t node_limit) {
    if (r < 2) throw InputError("sunflower size must be at least 2");
    // Identical sets cannot both be members; keep the first copy.
    std::vector<std::size_t> distinct;
    {
        std::unordered_set<VertexSet, SetHash> seen;
        for (std::size_t i = 0; i < family.size(); ++i)
            if (seen.insert(family[i]).second) distinct.push_back(i);
    }
    std::map<VertexSet, std::vector<std::size_t>> by_core;
    for (std::size_t i : distinct) for_each_subset(family[i], [&](const VertexSet& sub) { by_core[sub].push_back(i); });

    std::optional<Sunflower> best;
    const std::size_t need = static_cast<std::size_t>(r);
    for (const auto& [core, group] : by_core) {
        if (group.size() < need) continue;
        std::vector<VertexSet> petals;
        for (std::size_t i : group) petals.push_back(minus(family[i], core));
        if (max_disjoint_packing(petals, need, node_limit).chosen.size() < need) continue;

        // Lexicographically first completion, pruned by packing feasibility of the remainder.
        std::vector<std::size_t> pick;
        std::unordered_set<Vertex> used;
        std::function<bool(std::size_t)> go = [&](std::size_t from) {
            if (pick.size() == need) return true;
            std::vector<VertexSet> rest;
            std::vector<std::size_t> rest_pos;
            for (std::size_t p = from; p < group.size(); ++p)
                if (std::none_of(petals[p].begin(), petals[p].end(), [&](Vertex v) { return used.count(v) != 0; })) {
                    rest.push_back(petals[p]);
                    rest_pos.push_back(p);
                }
            if (max_disjoint_packing(rest, need - pick.size(), node_limit).chosen.size() < need - pick.size())
                return false;
            for (std::size_t p : rest_pos) {
                pick.push_back(p);
                used.insert(petals[p].begin(), petals[p].end());
                if (go(p + 1)) return true;
                for (Vertex v : petals[p]) used.erase(v);
                pick.pop_back();
            }
            return false;
        };
        if (!go(0)) continue;
        Sunflower s;
        for (std::size_t p : pick) s.members.push_back(group[p]);
        s.core = core;
        if (!best || s.members < best->members) best = std::move(s);
    }
    if (best && !is_sunflower(family, *best)) throw std::logic_error("sunflower search returned an invalid family");
    return best;
}

std::int64_t heavy_threshold(std::int64_t delta, int gamma, std::size_t core_size) {
    constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 64;
    std::int64_t t = delta;
    for (std::size_t i = 0; i < core_size && t < cap; ++i) t *= gamma;
    return std::min(t, cap);
}

namespace {

// Occurrences inside the alive set that contain the core.
std::vector<std::uint32_t> members_containing(const OccurrenceIndex& occ, const VertexSet& core,
                                              const std::vector<char>* alive) {
    std::vector<std::uint32_t> out;
    if (core.empty()) return out;
    Vertex pivot = core.front();
    for (Vertex v : core)
        if (occ.containing(v).size() < occ.containing(pivot).size()) pivot = v;
    for (std::uint32_t id : occ.containing(pivot)) {
        auto s = occ[id];
        if (!includes(s, core)) continue;
        if (alive && !std::all_of(s.begin(), s.end(), [&](Vertex v) { return (*alive)[v] != 0; })) continue;
        out.push_back(id);
    }
    return out;
}

}  // namespace

HeavySetReport is_heavy(const VertexSet& core, const OccurrenceIndex& occ, const std::vector<char>* alive,
                        std::int64_t delta, int gamma) {
    if (core.empty()) throw InputError("heavy-set core must be nonempty");
    HeavySetReport rep;
    rep.core = core;
    rep.threshold = heavy_threshold(delta, gamma, core.size());
    auto ids = members_containing(occ, core, alive);
    std::vector<VertexSet> petals;
    for (auto id : ids) petals.push_back(minus(occ[id], core));
    auto packing = max_disjoint_packing(petals);
    rep.max_packing = static_cast<std::int64_t>(packing.chosen.size());
    rep.heavy = rep.max_packing >= rep.threshold;
    if (rep.heavy) {
        Sunflower s;
        s.core = core;
        for (std::size_t i = 0; i < static_cast<std::size_t>(rep.threshold); ++i) s.members.push_back(ids[packing.chosen[i]]);
        std::sort(s.members.begin(), s.members.end());
        rep.witness = std::move(s);
    }
    return rep;
}

bool HeavyTester::heavy(const VertexSet& core, const std::vector<char>* alive, std::vector<std::uint32_t>* witness) const {
    const auto threshold = heavy_threshold(delta_, gamma_, core.size());
    auto ids = members_containing(occ_, core, alive);
    if (static_cast<std::int64_t>(ids.size()) < threshold) return false;
    std::vector<VertexSet> petals;
    petals.reserve(ids.size());
    for (auto id : ids) petals.push_back(minus(occ_[id], core));
    auto packing = max_disjoint_packing(petals, static_cast<std::size_t>(threshold), node_limit);
    if (static_cast<std::int64_t>(packing.chosen.size()) < threshold) return false;
    if (witness) {
        witness->clear();
        for (std::size_t i : packing.chosen) witness->push_back(ids[i]);
    }
    return true;
}

std::vector<VertexSet> minimal_heavy_sets(const OccurrenceIndex& occ, const std::vector<char>* alive,
                                          std::int64_t delta, int gamma) {
    HeavyTester tester(occ, delta, gamma);
    std::unordered_set<VertexSet, SetHash> found;
    std::vector<VertexSet> out;
    std::size_t max_size = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) max_size = std::max(max_size, occ[i].size());

    for (std::size_t size = 1; size <= max_size; ++size) {
        std::vector<VertexSet> layer;
        for (std::size_t i = 0; i < occ.size(); ++i) {
            auto s = occ[i];
            if (s.size() < size) continue;
            if (alive && !std::all_of(s.begin(), s.end(), [&](Vertex v) { return (*alive)[v] != 0; })) continue;
            // size-subsets of s via a selector mask
            std::vector<char> sel(s.size(), 0);
            std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(size), 1);
            do {
                VertexSet sub;
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (sel[j]) sub.push_back(s[j]);
                layer.push_back(std::move(sub));
            } while (std::prev_permutation(sel.begin(), sel.end()));
        }
        std::sort(layer.begin(), layer.end());
        layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
        for (auto& x : layer) {
            bool dominated = false;
            if (!found.empty())
                for_each_subset(x, [&](const VertexSet& sub) {
                    if (!dominated && !sub.empty() && sub.size() < x.size() && found.count(sub)) dominated = true;
                });
            if (dominated || !tester.heavy(x, alive)) continue;
            found.insert(x);
            out.push_back(std::move(x));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> representative_set(std::span<const VertexSet> family, int q, std::uint64_t node_limit) {
    if (q < 0) throw InputError("q must be non-negative");
    std::vector<std::size_t> rep;
    std::uint64_t nodes = 0;

    // Is there A with |A| <= q, A disjoint from avoid, meeting every chosen member?
    std::function<bool(int, std::vector<Vertex>&, const VertexSet&)> hits_all = [&](int budget, std::vector<Vertex>& a,
                                                                                   const VertexSet& avoid) {
        if (++nodes > node_limit) throw BudgetExceeded("representative-set verification exceeded its node budget");
        const VertexSet* unhit = nullptr;
        for (std::size_t i : rep) {
            const VertexSet& m = family[i];
            if (std::none_of(m.begin(), m.end(), [&](Vertex v) { return std::find(a.begin(), a.end(), v) != a.end(); })) {
                unhit = &m;
                break;
            }
        }
        if (!unhit) return true;
        if (budget == 0) return false;
        for (Vertex v : *unhit) {
            if (std::binary_search(avoid.begin(), avoid.end(), v)) continue;
            a.push_back(v);
            bool ok = hits_all(budget - 1, a, avoid);
            a.pop_back();
            if (ok) return true;
        }
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (std::find(rep.begin(), rep.end(), i) != rep.end()) continue;
            std::vector<Vertex> a;
            if (hits_all(q, a, family[i])) {
                rep.push_back(i);
                changed = true;
            }
        }
    }
    std::sort(rep.begin(), rep.end());
    return rep;
}

}  // namespace sparsehit
