#include "sparsehit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sparsehit/errors.hpp"
#include "sparsehit/hitting_set.hpp"

namespace sparsehit {

namespace {

void require_connected(const PatternSet& fs, const char* who) {
    if (!fs.all_connected()) throw InputError(std::string(who) + " needs connected patterns");
}

std::optional<std::int64_t> checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base) return std::nullopt;
        r *= base;
    }
    return r;
}

// beta = epsilon / maxdeg^(2 gamma), or nullopt when the power overflows.
std::optional<Rational> scheme_beta(const Rational& epsilon, int max_degree, int gamma) {
    auto p = checked_pow(std::max(max_degree, 1), 2 * gamma);
    if (!p) return std::nullopt;
    try {
        return epsilon / Rational(*p);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

std::vector<char> mask_of(int n, std::span<const Vertex> vs) {
    std::vector<char> m(static_cast<std::size_t>(n), 0);
    for (Vertex v : vs) m[v] = 1;
    return m;
}

std::vector<std::size_t> sizes_desc(const std::vector<VertexSet>& comps) {
    std::vector<std::size_t> out;
    for (const auto& c : comps) out.push_back(c.size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Hits every occurrence of occ: the cut vertices plus an exact optimum inside each part.
// part[v] is the part id of v, or -1 for cut vertices.
VertexSet solve_parts(const OccurrenceIndex& occ, const std::vector<int>& part, std::size_t parts,
                      const ExactOptions& exact) {
    std::vector<std::vector<VertexSet>> groups(parts);
    for (std::size_t i = 0; i < occ.size(); ++i) {
        auto s = occ[i];
        if (std::any_of(s.begin(), s.end(), [&](Vertex v) { return part[v] < 0; })) continue;
        int p = part[s.front()];
        for (Vertex v : s)
            if (part[v] != p) throw std::logic_error("occurrence spans two parts");
        groups[static_cast<std::size_t>(p)].emplace_back(s.begin(), s.end());
    }
    VertexSet out;
    for (Vertex v = 0; v < static_cast<Vertex>(part.size()); ++v)
        if (part[v] < 0) out.push_back(v);
    for (const auto& g : groups) {
        if (g.empty()) continue;
        auto sol = solve_family_exactly(g, exact);
        out.insert(out.end(), sol.begin(), sol.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Part labels for the components of g restricted to alive vertices (non-alive get -1).
std::pair<std::vector<int>, std::size_t> label_components(const Graph& g, const std::vector<char>& alive) {
    std::vector<int> part(static_cast<std::size_t>(g.order()), -1);
    auto comps = connected_components(g, alive);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (Vertex v : comps[c]) part[v] = static_cast<int>(c);
    return {part, comps.size()};
}

}  // namespace

VertexSet solve_family_exactly(std::span<const VertexSet> family, const ExactOptions& options) {
    auto sol = min_hitting_set(family, {std::nullopt, options.node_limit});
    return *sol;
}

std::optional<Solution> exact_branching_solver(const Graph& g, const PatternSet& fs, const ExactOptions& options) {
    Stopwatch clock;
    auto occ = enumerate_occurrences(g, fs, options.enumeration);
    auto family = occ.sets();
    auto best = min_hitting_set(family, {options.max_size, options.node_limit});
    if (!best) return std::nullopt;
    Solution sol;
    sol.solver = "exact";
    sol.vertices = std::move(*best);
    sol.opt = static_cast<std::int64_t>(sol.vertices.size());
    sol.params["occurrences"] = std::to_string(occ.size());
    if (options.max_size) sol.params["max_size"] = std::to_string(*options.max_size);
    sol.timings_ms["solve"] = clock.lap();
    certify(sol, g, fs);
    sol.timings_ms["verify"] = clock.lap();
    return sol;
}

SeparatorResult balanced_separator(const Graph& g) {
    const int n = g.order();
    SeparatorResult res;
    res.method = "bfs-level";
    if (n <= 2) {
        if (n > 0) res.separator = {0};
        if (n == 2) res.component_sizes = {1};
        return res;
    }
    // Pseudo-peripheral start: farthest vertex from vertex 0.
    auto d0 = bfs_distances(g, 0);
    Vertex start = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (d0[v] < 0) throw InputError("balanced_separator expects a connected graph");
        if (d0[v] > d0[start]) start = v;
    }
    auto dist = bfs_distances(g, start);
    int depth = *std::max_element(dist.begin(), dist.end());
    std::vector<VertexSet> levels(static_cast<std::size_t>(depth) + 1);
    for (Vertex v = 0; v < n; ++v) levels[dist[v]].push_back(v);

    const double limit = 2.0 * n / 3.0;
    int chosen = -1;
    std::size_t before = 0, chosen_before = 0;
    for (int i = 0; i <= depth; ++i) {
        std::size_t after = static_cast<std::size_t>(n) - before - levels[i].size();
        auto better = [&] {
            if (levels[i].size() != levels[chosen].size()) return levels[i].size() < levels[chosen].size();
            std::size_t chosen_after = static_cast<std::size_t>(n) - chosen_before - levels[chosen].size();
            return std::max(before, after) < std::max(chosen_before, chosen_after);
        };
        if (before <= limit && after <= limit && (chosen < 0 || better())) {
            chosen = i;
            chosen_before = before;
        }
        before += levels[i].size();
    }
    // Level cuts always include the median level, so chosen is set.
    std::vector<char> in_sep(static_cast<std::size_t>(n), 0);
    for (Vertex v : levels[chosen]) in_sep[v] = 1;

    // Vertices of the cut with no neighbour further out can join the inner side.
    std::size_t inner = chosen_before;
    for (Vertex v : levels[chosen]) {
        if (inner + 1 > limit) break;
        auto nb = g.neighbors(v);
        bool outward = std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return dist[w] == chosen + 1; });
        if (!outward) {
            in_sep[v] = 0;
            ++inner;
        }
    }
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    for (Vertex v = 0; v < n; ++v)
        if (in_sep[v]) res.separator.push_back(v), alive[v] = 0;
    res.component_sizes = sizes_desc(connected_components(g, alive));
    if (!res.component_sizes.empty() && static_cast<double>(res.component_sizes.front()) > limit)
        throw std::logic_error("balanced separator produced an oversized component");

    // A single hub can beat the level cut (stars, wheels).
    if (res.separator.size() > 1) {
        Vertex hub = 0;
        for (Vertex v = 1; v < n; ++v)
            if (g.degree(v) > g.degree(hub)) hub = v;
        std::vector<char> rest(static_cast<std::size_t>(n), 1);
        rest[hub] = 0;
        auto sizes = sizes_desc(connected_components(g, rest));
        if (sizes.empty() || static_cast<double>(sizes.front()) <= limit) {
            res.separator = {hub};
            res.component_sizes = std::move(sizes);
            res.method = "hub";
        }
    }
    return res;
}

SeparatorResult shatter_to_size(const Graph& g, std::size_t max_component) {
    if (max_component == 0) throw InputError("component bound must be positive");
    SeparatorResult res;
    res.method = "recursive-bfs-level";
    std::vector<char> alive(static_cast<std::size_t>(g.order()), 1);
    std::vector<VertexSet> work = connected_components(g);
    std::vector<VertexSet> done;
    while (!work.empty()) {
        VertexSet comp = std::move(work.back());
        work.pop_back();
        if (comp.size() <= max_component) {
            done.push_back(std::move(comp));
            continue;
        }
        auto sub = induced_subgraph(g, comp);
        auto cut = balanced_separator(sub.graph);
        std::vector<char> keep(comp.size(), 1);
        for (Vertex v : cut.separator) {
            keep[v] = 0;
            res.separator.push_back(sub.to_parent[v]);
        }
        for (auto& piece : connected_components(sub.graph, keep)) {
            for (Vertex& v : piece) v = sub.to_parent[v];
            work.push_back(std::move(piece));
        }
    }
    std::sort(res.separator.begin(), res.separator.end());
    res.component_sizes = sizes_desc(done);
    return res;
}

std::size_t shatter_threshold(const Rational& beta, int exponent) {
    if (beta <= Rational(0)) throw InputError("beta must be positive");
    constexpr std::size_t huge = std::numeric_limits<std::size_t>::max();
    try {
        Rational inv = Rational(1) / beta, p(1);
        for (int i = 0; i < exponent; ++i) p = p * inv;
        return static_cast<std::size_t>(std::max<std::int64_t>(p.ceil(), 1));
    } catch (const std::overflow_error&) {
        return huge;
    }
}

SeparatorResult shatter_into_small_components(const Graph& g, const Rational& beta, int exponent) {
    return shatter_to_size(g, shatter_threshold(beta, exponent));
}

Solution separator_scheme(const Graph& g, const PatternSet& fs, const Rational& epsilon,
                          const SeparatorSchemeOptions& options) {
    require_connected(fs, "separator scheme");
    Stopwatch clock;
    Solution sol;
    sol.solver = "separator";
    sol.params["epsilon"] = epsilon.str();
    auto occ = enumerate_occurrences(g, fs, options.exact.enumeration);
    sol.timings_ms["enumerate"] = clock.lap();

    VertexSet relevant;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!occ.containing(v).empty()) relevant.push_back(v);
    auto h = induced_subgraph(g, relevant);
    const int max_degree = h.graph.max_degree();
    auto beta = scheme_beta(epsilon, max_degree, fs.gamma);
    std::size_t threshold = options.max_component.value_or(
        beta ? shatter_threshold(*beta, options.exponent) : std::numeric_limits<std::size_t>::max());

    auto cut = shatter_to_size(h.graph, threshold);
    std::vector<char> alive(static_cast<std::size_t>(g.order()), 1);
    for (Vertex v : cut.separator) alive[h.to_parent[v]] = 0;
    auto [part, parts] = label_components(g, alive);
    for (Vertex v = 0; v < g.order(); ++v)
        if (!alive[v]) part[v] = -1;
    sol.timings_ms["shatter"] = clock.lap();

    sol.vertices = solve_parts(occ, part, parts, options.exact);
    sol.timings_ms["solve"] = clock.lap();

    const double lower = max_degree > 0 ? relevant.size() / std::pow(double(max_degree), 2.0 * fs.gamma) : 0.0;
    sol.params["max_degree"] = std::to_string(max_degree);
    sol.params["beta"] = beta ? beta->str() : "underflow";
    sol.params["component_bound"] = threshold == std::numeric_limits<std::size_t>::max() ? "inf" : std::to_string(threshold);
    sol.params["separator_size"] = std::to_string(cut.separator.size());
    sol.params["largest_component"] = std::to_string(cut.component_sizes.empty() ? 0 : cut.component_sizes.front());
    sol.params["opt_lower_bound"] = std::to_string(lower);
    sol.params["ratio_certified"] = cut.separator.size() <= epsilon.to_double() * lower ? "true" : "false";
    certify(sol, g, fs);
    sol.timings_ms["verify"] = clock.lap();
    return sol;
}

SeparatorResult ball_carving_partition(const Graph& g, const Rational& beta, std::uint64_t seed) {
    if (beta <= Rational(0)) throw InputError("beta must be positive");
    const int n = g.order();
    const std::int64_t base = (Rational(1) / beta).ceil();
    const int r0 = static_cast<int>(std::min<std::int64_t>(base, n + 1));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> radius(r0, 2 * r0);

    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    SeparatorResult res;
    res.method = "ball-carving";
    std::vector<char> assigned(static_cast<std::size_t>(n), 0);
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> queue;
    for (Vertex c : order) {
        if (assigned[c]) continue;
        const int rho = radius(rng);
        queue.assign(1, c);
        dist[c] = 0;
        std::size_t ball = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            Vertex v = queue[h];
            if (dist[v] > rho) continue;
            for (Vertex w : g.neighbors(v))
                if (!assigned[w] && dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        for (Vertex v : queue) {
            assigned[v] = 1;
            if (dist[v] > rho)
                res.separator.push_back(v);
            else
                ++ball;
            dist[v] = -1;
        }
        res.component_sizes.push_back(ball);
    }
    std::sort(res.separator.begin(), res.separator.end());
    std::sort(res.component_sizes.rbegin(), res.component_sizes.rend());
    return res;
}

Solution carve_exact(const Graph& g, const PatternSet& fs, const Rational& epsilon, const CarveOptions& options) {
    require_connected(fs, "carve+exact");
    Stopwatch clock;
    Solution sol;
    sol.solver = "carve+exact";
    sol.params["epsilon"] = epsilon.str();
    sol.params["seed"] = std::to_string(options.seed);
    auto occ = enumerate_occurrences(g, fs, options.exact.enumeration);
    sol.timings_ms["enumerate"] = clock.lap();

    VertexSet relevant;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!occ.containing(v).empty()) relevant.push_back(v);
    auto h = induced_subgraph(g, relevant);
    auto beta = options.beta ? options.beta : scheme_beta(epsilon, h.graph.max_degree(), fs.gamma);
    std::vector<char> alive(static_cast<std::size_t>(g.order()), 1);
    if (beta) {
        auto cut = ball_carving_partition(h.graph, *beta, options.seed);
        for (Vertex v : cut.separator) alive[h.to_parent[v]] = 0;
        sol.params["beta"] = beta->str();
        sol.params["separator_size"] = std::to_string(cut.separator.size());
    } else {
        sol.params["beta"] = "underflow";
        sol.params["separator_size"] = "0";
    }
    auto [part, parts] = label_components(g, alive);
    for (Vertex v = 0; v < g.order(); ++v)
        if (!alive[v]) part[v] = -1;
    sol.timings_ms["carve"] = clock.lap();
    sol.vertices = solve_parts(occ, part, parts, options.exact);
    sol.timings_ms["solve"] = clock.lap();
    certify(sol, g, fs);
    sol.timings_ms["verify"] = clock.lap();
    return sol;
}

std::vector<std::pair<int, int>> Layering::pieces(int q) const {
    const int count = static_cast<int>(labels.size());
    std::vector<std::pair<int, int>> out;
    std::vector<char> seen(static_cast<std::size_t>(alpha), 0);
    int prev_end = -1;
    for (int i = 0; i < count; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        int j = i;
        seen[labels[i]] = 1;
        while (j + 1 < count) {
            int f = labels[j + 1];
            if (f != q && f != labels[j] && seen[f]) break;
            seen[f] = 1;
            ++j;
        }
        if (j > prev_end) out.emplace_back(i, j);
        prev_end = std::max(prev_end, j);
        if (j == count - 1) break;
    }
    return out;
}

Layering make_layering(const Graph& g, Vertex source, int alpha, int beta) {
    if (alpha < 1 || beta < 1) throw InputError("layering needs alpha, beta >= 1");
    Layering l;
    l.source = source;
    l.alpha = alpha;
    l.beta = beta;
    auto dist = bfs_distances(g, source);
    int depth = *std::max_element(dist.begin(), dist.end());
    l.layers.resize(static_cast<std::size_t>(depth) + 1);
    for (Vertex v = 0; v < g.order(); ++v)
        if (dist[v] >= 0) l.layers[dist[v]].push_back(v);
    for (int i = 0; i <= depth; ++i) l.labels.push_back((i / beta) % alpha);
    return l;
}

Solution baker_layering(const Graph& g, const PatternSet& fs, const Rational& epsilon, const ExactOptions& exact) {
    require_connected(fs, "Baker layering");
    if (epsilon <= Rational(0)) throw InputError("epsilon must be positive");
    Stopwatch clock;
    Solution sol;
    sol.solver = "baker";
    const int alpha = static_cast<int>((Rational(1) / epsilon).ceil());
    const int beta = fs.gamma;
    sol.params["epsilon"] = epsilon.str();
    sol.params["alpha"] = std::to_string(alpha);
    sol.params["beta"] = std::to_string(beta);
    auto occ = enumerate_occurrences(g, fs, exact.enumeration);
    sol.timings_ms["enumerate"] = clock.lap();

    std::vector<int> layer_of(static_cast<std::size_t>(g.order()), -1);
    std::size_t pieces_solved = 0, largest_piece = 0;
    for (const auto& comp : connected_components(g)) {
        auto layering = make_layering(g, comp.front(), alpha, beta);
        for (std::size_t i = 0; i < layering.layers.size(); ++i)
            for (Vertex v : layering.layers[i]) layer_of[v] = static_cast<int>(i);
        // Occurrences of this component with their layer span.
        std::vector<std::pair<int, int>> span;
        std::vector<std::uint32_t> ids;
        std::vector<char> seen(occ.size(), 0);
        for (Vertex v : comp)
            for (auto id : occ.containing(v)) {
                if (seen[id]) continue;
                seen[id] = 1;
                auto s = occ[id];
                auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [&](Vertex a, Vertex b) { return layer_of[a] < layer_of[b]; });
                span.emplace_back(layer_of[*lo], layer_of[*hi]);
                ids.push_back(id);
            }
        if (ids.empty()) continue;

        std::optional<VertexSet> best;
        for (int q = 0; q < alpha; ++q) {
            VertexSet sq;
            for (auto [first, last] : layering.pieces(q)) {
                std::vector<VertexSet> family;
                for (std::size_t i = 0; i < ids.size(); ++i)
                    if (span[i].first >= first && span[i].second <= last) family.emplace_back(occ[ids[i]].begin(), occ[ids[i]].end());
                std::size_t piece_vertices = 0;
                for (int l = first; l <= last; ++l) piece_vertices += layering.layers[l].size();
                largest_piece = std::max(largest_piece, piece_vertices);
                ++pieces_solved;
                if (family.empty()) continue;
                auto part = solve_family_exactly(family, exact);
                sq.insert(sq.end(), part.begin(), part.end());
            }
            std::sort(sq.begin(), sq.end());
            sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
            if (!best || sq.size() < best->size()) best = std::move(sq);
        }
        sol.vertices.insert(sol.vertices.end(), best->begin(), best->end());
    }
    std::sort(sol.vertices.begin(), sol.vertices.end());
    sol.params["pieces"] = std::to_string(pieces_solved);
    sol.params["largest_piece"] = std::to_string(largest_piece);
    sol.timings_ms["solve"] = clock.lap();
    certify(sol, g, fs);
    sol.timings_ms["verify"] = clock.lap();
    return sol;
}

InnerSolver make_solver(std::string_view name, const SolverConfig& config) {
    if (name == "exact")
        return [config](const Graph& g, const PatternSet& fs, const Rational&) {
            return *exact_branching_solver(g, fs, config.exact);
        };
    if (name == "separator")
        return [config](const Graph& g, const PatternSet& fs, const Rational& eps) {
            SeparatorSchemeOptions o;
            o.max_component = config.max_component;
            o.exact = config.exact;
            return separator_scheme(g, fs, eps, o);
        };
    if (name == "baker")
        return [config](const Graph& g, const PatternSet& fs, const Rational& eps) {
            return baker_layering(g, fs, eps, config.exact);
        };
    if (name == "carve+exact")
        return [config](const Graph& g, const PatternSet& fs, const Rational& eps) {
            CarveOptions o;
            o.beta = config.beta;
            o.seed = config.seed;
            o.exact = config.exact;
            return carve_exact(g, fs, eps, o);
        };
    throw InputError("unknown solver '" + std::string(name) + "' (expected exact, separator, baker or carve+exact)");
}

}  // namespace sparsehit
