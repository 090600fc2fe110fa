#include "sparsehit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sparsehit/errors.hpp"

namespace sparsehit {

namespace {

// Portable draws on top of mt19937_64 (the std distributions differ between libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

int int_param(const GeneratorSpec& spec, const std::string& key, double fallback) {
    double v = spec.param(key, fallback);
    if (v != std::floor(v) || v < 0 || v > 1e9) throw InputError("parameter '" + key + "' must be a non-negative integer");
    return static_cast<int>(v);
}

Graph grid(const GeneratorSpec& spec) {
    int w = int_param(spec, "w", spec.n > 0 ? std::floor(std::sqrt(double(spec.n))) : 0);
    int h = int_param(spec, "h", w > 0 && spec.n > 0 ? std::ceil(double(spec.n) / w) : 0);
    if (w < 1 || h < 1) throw InputError("grid needs w, h >= 1");
    bool diagonals = spec.param("diagonals", 0) != 0;
    std::vector<Edge> edges;
    auto id = [w](int x, int y) { return static_cast<Vertex>(y * w + x); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) edges.emplace_back(id(x, y), id(x + 1, y));
            if (y + 1 < h) edges.emplace_back(id(x, y), id(x, y + 1));
            if (diagonals && x + 1 < w && y + 1 < h) edges.emplace_back(id(x, y), id(x + 1, y + 1));
        }
    return Graph::from_edges(w * h, edges);
}

Graph unit_disk(const GeneratorSpec& spec, Rng& rng) {
    const int n = spec.n;
    const double r = spec.param("radius", 1.0 / std::sqrt(double(n)));
    if (r < 0) throw InputError("radius must be non-negative");
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = rng.unit();
        ys[i] = rng.unit();
    }
    // Buckets of side >= r, at most about n of them.
    const double cell = std::max({r, 1.0 / std::ceil(std::sqrt(double(n))), 1e-9});
    const int cells = std::max(1, static_cast<int>(std::ceil(1.0 / cell)));
    auto coord = [&](double t) { return std::min(cells - 1, static_cast<int>(t / cell)); };
    std::vector<std::vector<Vertex>> bucket(static_cast<std::size_t>(cells) * cells);
    for (int i = 0; i < n; ++i) bucket[static_cast<std::size_t>(coord(ys[i])) * cells + coord(xs[i])].push_back(i);
    std::vector<Edge> edges;
    const double r2 = r * r;
    for (int i = 0; i < n; ++i) {
        const int cx = coord(xs[i]), cy = coord(ys[i]);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int bx = cx + dx, by = cy + dy;
                if (bx < 0 || by < 0 || bx >= cells || by >= cells) continue;
                for (Vertex j : bucket[static_cast<std::size_t>(by) * cells + bx]) {
                    if (j <= i) continue;
                    double ddx = xs[i] - xs[j], ddy = ys[i] - ys[j];
                    if (ddx * ddx + ddy * ddy <= r2 && r > 0) edges.emplace_back(i, j);
                }
            }
    }
    return Graph::from_edges(n, edges);
}

Graph bounded_degree_random(const GeneratorSpec& spec, Rng& rng) {
    const int n = spec.n;
    const int d = int_param(spec, "degree", 3);
    std::vector<std::vector<Vertex>> nbrs(n);
    std::vector<Edge> edges;
    if (n >= 2)
        for (std::int64_t attempt = 0; attempt < static_cast<std::int64_t>(n) * d; ++attempt) {
            Vertex u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
            if (u == v || static_cast<int>(nbrs[u].size()) >= d || static_cast<int>(nbrs[v].size()) >= d) continue;
            if (std::find(nbrs[u].begin(), nbrs[u].end(), v) != nbrs[u].end()) continue;
            edges.emplace_back(std::min(u, v), std::max(u, v));
            nbrs[u].push_back(v);
            nbrs[v].push_back(u);
        }
    return Graph::from_edges(n, edges);
}

Graph disjoint_cliques(const GeneratorSpec& spec) {
    const int size = int_param(spec, "size", 3);
    if (size < 1) throw InputError("clique size must be positive");
    const int count = int_param(spec, "count", spec.n / size);
    std::vector<Edge> edges;
    for (int c = 0; c < count; ++c)
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j) edges.emplace_back(c * size + i, c * size + j);
    return Graph::from_edges(count * size, edges);
}

Graph friendship(const GeneratorSpec& spec) {
    const int k = int_param(spec, "k", (spec.n - 1) / 2);
    std::vector<Edge> edges;
    for (int t = 0; t < k; ++t) {
        edges.emplace_back(0, 2 * t + 1);
        edges.emplace_back(0, 2 * t + 2);
        edges.emplace_back(2 * t + 1, 2 * t + 2);
    }
    return Graph::from_edges(2 * k + 1, edges);
}

Graph segment_intersection(const GeneratorSpec& spec, Rng& rng) {
    constexpr std::int64_t side = 1'000'000;
    const int n = spec.n;
    const double length = spec.param("length", 0.1);
    if (length < 0) throw InputError("segment length must be non-negative");
    const auto reach = static_cast<std::int64_t>(std::llround(length * side));
    std::vector<Segment> segs(n);
    for (auto& s : segs) {
        s.x1 = static_cast<std::int64_t>(rng.below(side + 1));
        s.y1 = static_cast<std::int64_t>(rng.below(side + 1));
        auto offset = [&](std::int64_t base) {
            std::int64_t lo = std::max<std::int64_t>(0, base - reach), hi = std::min<std::int64_t>(side, base + reach);
            return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        };
        s.x2 = offset(s.x1);
        s.y2 = offset(s.y1);
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (segments_intersect(segs[i], segs[j])) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph erdos_renyi(const GeneratorSpec& spec, Rng& rng) {
    const double p = spec.param("p", 0.5);
    if (p < 0 || p > 1) throw InputError("p must lie in [0, 1]");
    std::vector<Edge> edges;
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            if (rng.unit() < p) edges.emplace_back(i, j);
    return Graph::from_edges(spec.n, edges);
}

Graph path_or_cycle(int n, bool cycle) {
    if (cycle && n < 3) throw InputError("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    if (cycle) edges.emplace_back(0, n - 1);
    return Graph::from_edges(n, edges);
}

Graph complete(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph complete_bipartite(const GeneratorSpec& spec) {
    const int a = int_param(spec, "a", spec.n / 2);
    const int b = int_param(spec, "b", spec.n - a);
    std::vector<Edge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph::from_edges(a + b, edges);
}

Graph random_tree(const GeneratorSpec& spec, Rng& rng) {
    std::vector<Edge> edges;
    for (int i = 1; i < spec.n; ++i) edges.emplace_back(static_cast<Vertex>(rng.below(i)), i);
    return Graph::from_edges(spec.n, edges);
}

int orientation(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by, std::int64_t cx, std::int64_t cy) {
    __int128 v = static_cast<__int128>(bx - ax) * (cy - ay) - static_cast<__int128>(by - ay) * (cx - ax);
    return (v > 0) - (v < 0);
}

bool on_segment(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by, std::int64_t px, std::int64_t py) {
    return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py && py <= std::max(ay, by);
}

}  // namespace

double GeneratorSpec::param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string GeneratorSpec::describe() const {
    std::ostringstream out;
    out << family << "(n=" << n;
    for (const auto& [k, v] : params) out << ", " << k << "=" << v;
    out << ", seed=" << seed << ")";
    return out.str();
}

bool segments_intersect(const Segment& a, const Segment& b) {
    int o1 = orientation(a.x1, a.y1, a.x2, a.y2, b.x1, b.y1);
    int o2 = orientation(a.x1, a.y1, a.x2, a.y2, b.x2, b.y2);
    int o3 = orientation(b.x1, b.y1, b.x2, b.y2, a.x1, a.y1);
    int o4 = orientation(b.x1, b.y1, b.x2, b.y2, a.x2, a.y2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a.x1, a.y1, a.x2, a.y2, b.x1, b.y1)) return true;
    if (o2 == 0 && on_segment(a.x1, a.y1, a.x2, a.y2, b.x2, b.y2)) return true;
    if (o3 == 0 && on_segment(b.x1, b.y1, b.x2, b.y2, a.x1, a.y1)) return true;
    if (o4 == 0 && on_segment(b.x1, b.y1, b.x2, b.y2, a.x2, a.y2)) return true;
    return false;
}

Graph generate(const GeneratorSpec& spec) {
    const auto& f = spec.family;
    const bool sized_by_params = f == "grid" || f == "disjoint-cliques" || f == "friendship" || f == "complete-bipartite";
    if (spec.n < 1 && !sized_by_params) throw InputError("generator needs n >= 1");
    Rng rng(spec.seed);
    if (f == "grid") return grid(spec);
    if (f == "unit-disk") return unit_disk(spec, rng);
    if (f == "bounded-degree-random") return bounded_degree_random(spec, rng);
    if (f == "disjoint-cliques") return disjoint_cliques(spec);
    if (f == "friendship") return friendship(spec);
    if (f == "segment-intersection") return segment_intersection(spec, rng);
    if (f == "erdos-renyi") return erdos_renyi(spec, rng);
    if (f == "path") return path_or_cycle(spec.n, false);
    if (f == "cycle") return path_or_cycle(spec.n, true);
    if (f == "complete") return complete(spec.n);
    if (f == "complete-bipartite") return complete_bipartite(spec);
    if (f == "random-tree") return random_tree(spec, rng);
    throw InputError("unknown generator family '" + f + "'");
}

}  // namespace sparsehit
