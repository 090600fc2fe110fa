#include "sparsehit/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <cstdio>
#include <set>

#include "sparsehit/errors.hpp"

namespace sparsehit {

namespace {

constexpr int kMaxPatternOrder = 11;

Graph complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

Graph complete_bipartite(int a, int b) {
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph::from_edges(a + b, e);
}

std::optional<int> number(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<Graph> single_builtin(std::string_view t) {
    if (t == "claw") return complete_bipartite(1, 3);
    auto need = [&](std::optional<int> v, int lo) -> std::optional<int> {
        if (!v || *v < lo || *v > kMaxPatternOrder) return std::nullopt;
        return v;
    };
    if (t.starts_with("star")) {
        if (auto k = need(number(t.substr(4)), 1)) return complete_bipartite(1, *k);
        return std::nullopt;
    }
    if (t.size() < 2) return std::nullopt;
    std::string_view rest = t.substr(1);
    switch (t.front()) {
        case 'K':
            if (auto x = rest.find('x'); x != std::string_view::npos) {
                auto a = need(number(rest.substr(0, x)), 1), b = need(number(rest.substr(x + 1)), 1);
                if (a && b) return complete_bipartite(*a, *b);
                return std::nullopt;
            }
            if (auto k = need(number(rest), 1)) return complete(*k);
            return std::nullopt;
        case 'P':
            if (auto k = need(number(rest), 1)) return path(*k);
            return std::nullopt;
        case 'C':
            if (auto k = need(number(rest), 3)) return cycle(*k);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

std::optional<Graph> parse_builtin(std::string_view spec) {
    std::optional<Graph> acc;
    while (true) {
        auto plus = spec.find('+');
        auto part = single_builtin(spec.substr(0, plus));
        if (!part) return std::nullopt;
        acc = acc ? disjoint_union(*acc, *part) : *part;
        if (plus == std::string_view::npos) return acc;
        spec = spec.substr(plus + 1);
    }
}

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

// Short readable name for small connected graphs, canonical hex otherwise.
std::string guess_name(const Graph& g) {
    const int n = g.order();
    for (auto [name, candidate] : {std::pair<std::string, std::optional<Graph>>{"K" + std::to_string(n), complete(n)},
                                   {"P" + std::to_string(n), path(n)},
                                   {"C" + std::to_string(n), n >= 3 ? std::optional(cycle(n)) : std::nullopt},
                                   {"star" + std::to_string(n - 1), complete_bipartite(1, n - 1)}})
        if (candidate && isomorphic(g, *candidate)) return name;
    char buf[32];
    std::snprintf(buf, sizeof buf, "G%d_%llx", n, static_cast<unsigned long long>(canonical_code(g).bits));
    return buf;
}

}  // namespace

std::string_view mode_name(Mode mode) {
    return mode == Mode::Subgraph ? "sub" : "ind";
}

Mode parse_mode(std::string_view text) {
    if (text == "sub" || text == "subgraph") return Mode::Subgraph;
    if (text == "ind" || text == "induced") return Mode::Induced;
    throw InputError("unknown mode '" + std::string(text) + "' (expected sub or ind)");
}

Pattern make_pattern(Graph graph, std::string name) {
    if (graph.order() < 2) throw InputError("pattern '" + name + "' needs at least two vertices");
    if (graph.order() > kMaxPatternOrder) throw InputError("pattern '" + name + "' is too large");
    Pattern p;
    p.connected = is_connected(graph);
    p.graph = std::move(graph);
    p.name = std::move(name);
    return p;
}

Pattern builtin_pattern(std::string_view spec) {
    auto g = parse_builtin(spec);
    if (!g) throw InputError("unknown built-in pattern '" + std::string(spec) + "'");
    return make_pattern(std::move(*g), std::string(spec));
}

Pattern load_pattern(std::string_view spec) {
    if (auto g = parse_builtin(spec)) return make_pattern(std::move(*g), std::string(spec));
    std::string path(spec);
    if (!std::filesystem::exists(path)) throw InputError("unknown pattern '" + path + "'");
    return make_pattern(read_edge_list_file(path), std::filesystem::path(path).stem().string());
}

bool PatternSet::all_connected() const {
    return std::all_of(patterns.begin(), patterns.end(), [](const Pattern& p) { return p.connected; });
}

std::string PatternSet::describe() const {
    std::string out;
    for (const auto& p : patterns) out += (out.empty() ? "" : ",") + p.name;
    return out;
}

PatternSet make_pattern_set(std::vector<Pattern> patterns, Mode mode) {
    if (patterns.empty()) throw InputError("empty pattern set");
    PatternSet fs;
    fs.mode = mode;
    for (const auto& p : patterns) fs.gamma = std::max(fs.gamma, p.order());
    fs.patterns = std::move(patterns);
    return fs;
}

PatternSet parse_pattern_list(std::string_view list, Mode mode) {
    std::vector<Pattern> patterns;
    while (!list.empty()) {
        auto comma = list.find(',');
        std::string item = trim(list.substr(0, comma));
        if (!item.empty()) patterns.push_back(load_pattern(item));
        if (comma == std::string_view::npos) break;
        list = list.substr(comma + 1);
    }
    return make_pattern_set(std::move(patterns), mode);
}

CanonicalCode canonical_code(const Graph& g) {
    const int n = g.order();
    if (n > kMaxPatternOrder) throw InputError("canonical form limited to 11 vertices");
    const int total = n * (n - 1) / 2;
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges()) adj[u] |= 1u << v, adj[v] |= 1u << u;

    // Positions are filled by non-increasing degree; the code is read column by column,
    // most significant first, so a prefix fixes the leading bits.
    std::vector<int> degs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) degs[v] = g.degree(v);
    std::vector<int> slot_degree = degs;
    std::sort(slot_degree.rbegin(), slot_degree.rend());

    auto bit_pos = [&](int i, int k) { return total - 1 - (k * (k - 1) / 2 + i); };
    std::vector<int> placed(static_cast<std::size_t>(n));
    std::uint32_t used = 0;
    std::uint64_t best = 0;
    bool have_best = false;

    std::function<void(int, std::uint64_t)> go = [&](int k, std::uint64_t code) {
        if (k == n) {
            if (!have_best || code > best) best = code, have_best = true;
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used >> v & 1u || degs[v] != slot_degree[k]) continue;
            std::uint64_t next = code;
            for (int i = 0; i < k; ++i)
                if (adj[v] >> placed[i] & 1u) next |= std::uint64_t{1} << bit_pos(i, k);
            if (have_best && k > 0) {
                int low = bit_pos(k - 1, k);  // lowest bit decided so far
                std::uint64_t mask = ~((std::uint64_t{1} << low) - 1);
                if ((next & mask) < (best & mask)) continue;
            }
            used |= 1u << v;
            placed[k] = v;
            go(k + 1, next);
            used &= ~(1u << v);
        }
    };
    go(0, 0);
    return {n, best};
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    return canonical_code(a) == canonical_code(b);
}

std::vector<Graph> component_graphs(const Graph& g) {
    std::vector<Graph> out;
    for (const auto& comp : connected_components(g)) out.push_back(induced_subgraph(g, comp).graph);
    return out;
}

std::vector<PatternSet> conn_expansion(const PatternSet& fs) {
    std::vector<std::vector<Pattern>> choices;
    for (const auto& p : fs.patterns) {
        if (p.connected) {
            choices.push_back({p});
            continue;
        }
        std::vector<Pattern> comps;
        std::set<CanonicalCode> seen;
        for (auto& c : component_graphs(p.graph)) {
            if (c.order() < 2 || !seen.insert(canonical_code(c)).second) continue;
            std::string name = guess_name(c);
            comps.push_back(make_pattern(std::move(c), std::move(name)));
        }
        if (comps.empty()) throw InputError("pattern '" + p.name + "' has no component with an edge or two vertices");
        choices.push_back(std::move(comps));
    }

    std::vector<PatternSet> out;
    std::set<std::vector<CanonicalCode>> seen_sets;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::vector<Pattern> chosen;
        std::vector<CanonicalCode> key;
        for (std::size_t i = 0; i < choices.size(); ++i) {
            const Pattern& c = choices[i][pick[i]];
            CanonicalCode code = canonical_code(c.graph);
            if (std::find(key.begin(), key.end(), code) != key.end()) continue;
            key.push_back(code);
            chosen.push_back(c);
        }
        std::sort(key.begin(), key.end());
        if (seen_sets.insert(key).second) out.push_back(make_pattern_set(std::move(chosen), fs.mode));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return out;
}

bool has_shallow_minor(const Graph& host, const Graph& minor, int d, bool induced) {
    const int n = host.order(), k = minor.order();
    if (k > n) return false;
    if (n > 20) throw InputError("shallow-minor search limited to hosts with at most 20 vertices");
    std::vector<int> assign(static_cast<std::size_t>(n), -1);  // -1 = unused
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<Vertex> queue;

    auto radius_ok = [&](int b) {
        for (Vertex c = 0; c < n; ++c) {
            if (assign[c] != b) continue;
            std::fill(dist.begin(), dist.end(), -1);
            queue.assign(1, c);
            dist[c] = 0;
            bool ok = true;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                Vertex v = queue[h];
                for (Vertex w : host.neighbors(v))
                    if (assign[w] == b && dist[w] < 0) dist[w] = dist[v] + 1, queue.push_back(w);
            }
            for (Vertex v = 0; v < n && ok; ++v)
                if (assign[v] == b && (dist[v] < 0 || dist[v] > d)) ok = false;
            if (ok) return true;
        }
        return false;
    };

    auto check = [&] {
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (int a : assign)
            if (a >= 0) ++count[a];
        for (int c : count)
            if (c == 0) return false;
        std::vector<std::uint32_t> touch(static_cast<std::size_t>(k), 0);
        for (auto [u, v] : host.edges())
            if (assign[u] >= 0 && assign[v] >= 0 && assign[u] != assign[v])
                touch[assign[u]] |= 1u << assign[v], touch[assign[v]] |= 1u << assign[u];
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                bool want = minor.adjacent(a, b), have = touch[a] >> b & 1u;
                if (want && !have) return false;
                if (induced && !want && have) return false;
            }
        for (int b = 0; b < k; ++b)
            if (!radius_ok(b)) return false;
        return true;
    };

    // Odometer over assignments in {-1, 0..k-1}^n.
    while (true) {
        if (check()) return true;
        int i = 0;
        while (i < n && ++assign[i] == k) assign[i++] = -1;
        if (i == n) return false;
    }
}

PatternSet shallow_minor_expansion(const PatternSet& fs, int d, int size_cap, ExpansionOptions options) {
    if (d < 0) throw InputError("shallow-minor depth must be non-negative");
    const int delta = fs.gamma;
    if (size_cap > (d + 1) * delta * delta)
        throw InputError("size cap exceeds (d+1)*gamma^2 = " + std::to_string((d + 1) * delta * delta));
    if (size_cap > kMaxPatternOrder) throw InputError("size cap too large for exhaustive expansion");
    int smallest = delta;
    for (const auto& p : fs.patterns) smallest = std::min(smallest, p.order());

    std::uint64_t work = 0;
    for (int t = smallest; t <= size_cap; ++t) {
        std::uint64_t labelled = std::uint64_t{1} << (t * (t - 1) / 2), perms = 1;
        for (int i = 2; i <= t; ++i) perms *= static_cast<std::uint64_t>(i);
        work += labelled * perms;
        if (t * (t - 1) / 2 >= 40 || work > options.budget)
            throw BudgetExceeded("shallow-minor expansion space exceeds the configured budget");
    }

    std::vector<Pattern> members;
    for (int t = smallest; t <= size_cap; ++t) {
        std::vector<Edge> pairs;
        for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j) pairs.emplace_back(i, j);
        std::set<CanonicalCode> seen;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            std::vector<Edge> edges;
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1u) edges.push_back(pairs[b]);
            Graph h = Graph::from_edges(t, edges);
            if (!seen.insert(canonical_code(h)).second) continue;
            bool hit = std::any_of(fs.patterns.begin(), fs.patterns.end(), [&](const Pattern& p) {
                return has_shallow_minor(h, p.graph, d, true);
            });
            if (hit) {
                std::string name = guess_name(h);
                members.push_back(make_pattern(std::move(h), std::move(name)));
            }
        }
    }
    if (members.empty()) throw InputError("shallow-minor expansion is empty for this cap");
    return make_pattern_set(std::move(members), fs.mode);
}

}  // namespace sparsehit
