#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "sparsehit/errors.hpp"
#include "sparsehit/generators.hpp"
#include "sparsehit/hitting_set.hpp"
#include "sparsehit/solvers.hpp"

using namespace sparsehit;

namespace {

PatternSet fset(const char* list, Mode mode = Mode::Subgraph) { return parse_pattern_list(list, mode); }

Graph path(int n) {
    GeneratorSpec s{"path", n, {}, 1};
    return generate(s);
}

Graph cycle(int n) {
    GeneratorSpec s{"cycle", n, {}, 1};
    return generate(s);
}

std::size_t largest_component(const Graph& g, const VertexSet& removed) {
    std::vector<char> alive(static_cast<std::size_t>(g.order()), 1);
    for (Vertex v : removed) alive[v] = 0;
    std::size_t best = 0;
    for (const auto& c : connected_components(g, alive)) best = std::max(best, c.size());
    return best;
}

int diameter(const Graph& g, const VertexSet& comp) {
    auto sub = induced_subgraph(g, comp);
    int best = 0;
    for (Vertex v = 0; v < sub.graph.order(); ++v) {
        auto d = bfs_distances(sub.graph, v);
        best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
}

}  // namespace

TEST_CASE("exact solver examples") {
    auto k4 = builtin_pattern("K4").graph;
    auto s = exact_branching_solver(k4, fset("K3"));
    REQUIRE(s);
    CHECK(s->size() == 2);
    CHECK(s->opt == 2);
    CHECK(exact_branching_solver(cycle(5), fset("K2"))->size() == 3);
    CHECK(exact_branching_solver(path(6), fset("K3"))->size() == 0);

    ExactOptions capped;
    capped.max_size = 1;
    CHECK_FALSE(exact_branching_solver(k4, fset("K3"), capped));
    capped.max_size = 2;
    CHECK(exact_branching_solver(k4, fset("K3"), capped));

    ExactOptions starved;
    starved.node_limit = 3;
    std::mt19937_64 rng(5);
    auto dense = oracle::erdos_renyi(30, 0.3, rng);
    CHECK_THROWS_AS(exact_branching_solver(dense, fset("K2"), starved), BudgetExceeded);
}

TEST_CASE("exact solver matches the subset oracle") {
    std::mt19937_64 rng(43);
    const char* lists[] = {"K2", "K3", "P3", "P4", "C4", "claw", "K3,P4", "K2+K2"};
    for (int trial = 0; trial < 30; ++trial) {
        int n = 6 + static_cast<int>(rng() % 6);
        auto g = oracle::erdos_renyi(n, trial % 2 ? 0.25 : 0.45, rng);
        for (const char* list : lists)
            for (Mode mode : {Mode::Subgraph, Mode::Induced}) {
                auto fs = fset(list, mode);
                auto s = exact_branching_solver(g, fs);
                REQUIRE(s);
                CHECK(s->valid);
                CHECK(static_cast<int>(s->size()) == oracle::min_hitting_size(n, oracle::occurrences(g, fs)));
            }
    }
    auto g = oracle::erdos_renyi(7, 0.5, rng);
    CHECK(static_cast<int>(exact_branching_solver(g, fset("P3"))->size()) == oracle::min_deletion(g, fset("P3")));
}

TEST_CASE("family solver") {
    std::vector<VertexSet> fam{{1, 2}, {2, 3}, {3, 4}, {10, 11}};
    CHECK(solve_family_exactly(fam, {}).size() == 3);
    CHECK(disjoint_lower_bound(fam) >= 2);
}

TEST_CASE("balanced separators") {
    auto p = path(21);
    auto s = balanced_separator(p);
    CHECK(s.separator.size() == 1);
    CHECK(largest_component(p, s.separator) <= 11);

    std::vector<Edge> e;
    for (int i = 1; i <= 8; ++i) e.emplace_back(0, i);
    auto star = Graph::from_edges(9, e);
    CHECK(balanced_separator(star).separator == VertexSet{0});

    auto grid = oracle::grid(10, 10);
    auto gs = balanced_separator(grid);
    CHECK(gs.separator.size() <= 10);
    CHECK(largest_component(grid, gs.separator) <= 66);
}

TEST_CASE("shattering") {
    auto small = oracle::grid(4, 4);
    CHECK(shatter_to_size(small, 16).separator.empty());
    auto pieces = disjoint_union(oracle::grid(3, 3), oracle::grid(3, 3));
    CHECK(shatter_to_size(pieces, 9).separator.empty());

    auto grid = oracle::grid(32, 32);
    CHECK(shatter_threshold(Rational(1, 8), 2) == 64);
    auto res = shatter_into_small_components(grid, Rational(1, 8));
    CHECK(largest_component(grid, res.separator) <= 64);
    CHECK(res.component_sizes.front() <= 64);
    MESSAGE("32x32 grid shattered to <= 64 with |S| = " << res.separator.size());
    CHECK(res.separator.size() <= 0.35 * 1024);
}

TEST_CASE("separator scheme") {
    auto none = separator_scheme(oracle::grid(5, 5), fset("K3"), 1);
    CHECK(none.vertices.empty());

    for (int n : {10, 51, 120, 200}) {
        auto c = cycle(n);
        auto s = separator_scheme(c, fset("K2"), 1);
        CHECK(s.valid);
        CHECK(s.params.at("beta") == "1/16");
        const int opt = (n + 1) / 2;
        CHECK(oracle::max_matching(c) == n / 2);
        CHECK(s.size() <= 2 * opt);

        SeparatorSchemeOptions tight;
        tight.max_component = 12;
        auto t = separator_scheme(c, fset("K2"), Rational(1, 2), tight);
        CHECK(t.valid);
        CHECK(t.size() * 2 <= 3 * static_cast<std::size_t>(opt) + 3);
    }

    auto dense = builtin_pattern("K8").graph;
    auto d = separator_scheme(dense, fset("K3"), 1);
    CHECK(d.params.at("separator_size") == "0");
    CHECK(d.size() == 6);
    CHECK_THROWS_AS(separator_scheme(dense, fset("K2+K2"), 1), InputError);
}

TEST_CASE("ball carving") {
    auto grid = oracle::grid(3, 3);
    CHECK(ball_carving_partition(grid, Rational(1, 4), 1).separator.empty());
    auto k = builtin_pattern("K7").graph;
    CHECK(ball_carving_partition(k, Rational(1, 2), 5).separator.empty());

    auto p = path(100);
    for (std::uint64_t seed : {1, 2, 3}) {
        auto res = ball_carving_partition(p, Rational(1, 10), seed);
        std::vector<char> alive(100, 1);
        for (Vertex v : res.separator) alive[v] = 0;
        for (const auto& comp : connected_components(p, alive)) {
            if (!alive[comp.front()]) continue;
            CHECK(diameter(p, comp) <= 40);
        }
        CHECK(res.separator == ball_carving_partition(p, Rational(1, 10), seed).separator);
    }

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracle::unit_disk(120, 0.12, rng);
        auto res = ball_carving_partition(g, Rational(1, 2), trial);
        std::vector<char> alive(static_cast<std::size_t>(g.order()), 1);
        for (Vertex v : res.separator) alive[v] = 0;
        for (const auto& comp : connected_components(g, alive))
            if (alive[comp.front()]) CHECK(diameter(g, comp) <= 8);
    }

    auto carve = carve_exact(cycle(30), fset("K2"), 1);
    CHECK(carve.valid);
}

TEST_CASE("baker layering") {
    auto l = make_layering(path(10), 0, 2, 1);
    CHECK(l.labels == std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 0, 1});

    auto one = baker_layering(oracle::grid(4, 4), fset("K2"), 1);
    CHECK(one.size() == 8);

    for (int n : {9, 60, 250, 500}) {
        auto p = path(n);
        auto s = baker_layering(p, fset("K2"), 1);
        CHECK(s.valid);
        CHECK(s.size() <= 2 * static_cast<std::size_t>(oracle::max_matching(p)));
        auto half = baker_layering(p, fset("K2"), Rational(1, 2));
        CHECK(half.valid);
        CHECK(half.size() <= 2 * static_cast<std::size_t>(oracle::max_matching(p)));
    }
}

TEST_CASE("baker pieces cover every occurrence") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::unit_disk(40, 0.22, rng);
        auto comps = connected_components(g);
        auto biggest = *std::max_element(comps.begin(), comps.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
        auto sub = induced_subgraph(g, biggest).graph;
        for (const char* list : {"K2", "K3", "P4"}) {
            auto fs = fset(list);
            for (int alpha : {2, 3}) {
                auto layering = make_layering(sub, 0, alpha, fs.gamma);
                std::vector<int> layer(static_cast<std::size_t>(sub.order()));
                for (std::size_t i = 0; i < layering.layers.size(); ++i)
                    for (Vertex v : layering.layers[i]) layer[v] = static_cast<int>(i);
                auto occ = oracle::occurrences(sub, fs);
                for (int q = 0; q < alpha; ++q) {
                    auto pieces = layering.pieces(q);
                    CHECK(pieces.front().first == 0);
                    CHECK(pieces.back().second == static_cast<int>(layering.layers.size()) - 1);
                    for (std::size_t i = 1; i < pieces.size(); ++i) CHECK(pieces[i].first <= pieces[i - 1].second + 1);
                    for (const auto& s : occ) {
                        int lo = layer[s.front()], hi = lo;
                        for (Vertex v : s) lo = std::min(lo, layer[v]), hi = std::max(hi, layer[v]);
                        bool inside = std::any_of(pieces.begin(), pieces.end(), [&](auto pr) { return pr.first <= lo && hi <= pr.second; });
                        CHECK(inside);
                    }
                }
            }
        }
    }
}

TEST_CASE("solver registry") {
    auto g = oracle::grid(5, 5);
    for (const char* name : {"exact", "separator", "baker", "carve+exact"}) {
        auto s = make_solver(name)(g, fset("K2"), 1);
        CHECK(s.valid);
    }
    CHECK_THROWS_AS(make_solver("nope"), InputError);
}
