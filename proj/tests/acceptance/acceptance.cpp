// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance                   run everything
//   acceptance --only 5          run a single criterion
//   acceptance --expect-fail 11  exit 0 iff exactly the listed criteria fail (the FAIL lines are still printed)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../oracles.hpp"
#include "sparsehit/bench.hpp"
#include "sparsehit/decomposition.hpp"
#include "sparsehit/errors.hpp"
#include "sparsehit/generators.hpp"
#include "sparsehit/hitting_set.hpp"
#include "sparsehit/ordering.hpp"
#include "sparsehit/reduction.hpp"
#include "sparsehit/solvers.hpp"
#include "sparsehit/sunflower.hpp"

using namespace sparsehit;

namespace {

bool verbose = false;

// Pinned tolerances.
constexpr int kOracleGraphs = 500;
constexpr int kOracleMaxN = 14;
constexpr int kRatioMaxN = 18;
constexpr int kAuditInstances = 200;
constexpr int kSunflowerFamilies = 200;
constexpr int kMinorGraphs = 100;
constexpr int kMinorCap = 5;
constexpr int kDecompMaxN = 200;
constexpr int kDecompMaxK = 5;
constexpr int kClosedFormMaxN = 40;
constexpr int kBakerMaxN = 500;
constexpr double kSlopeLimit = 1.35;
constexpr double kLargestRunSeconds = 60.0;
constexpr std::size_t kScalingComponent = 64;
constexpr std::uint64_t kValidityNodeLimit = 200'000;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void fail(const std::string& what) {
        pass = false;
        if (failures.size() < 5) failures.push_back(what);
    }
};

PatternSet fset(const std::string& list, Mode mode = Mode::Subgraph) { return parse_pattern_list(list, mode); }

Graph gen(const std::string& family, int n, std::map<std::string, double> params = {}, std::uint64_t seed = 1) {
    return generate(GeneratorSpec{family, n, std::move(params), seed});
}

int oracle_opt(const Graph& g, const PatternSet& fs) {
    return oracle::min_hitting_size(g.order(), oracle::occurrences(g, fs));
}

std::string describe(const Graph& g) { return "n=" + std::to_string(g.order()) + " m=" + std::to_string(g.size()); }

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Small random host graphs from the families used throughout: ER, grids, unit-disk.
Graph small_host(std::mt19937_64& rng, int max_n, int kind) {
    int n = 4 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 3));
    switch (kind % 4) {
        case 0: return oracle::erdos_renyi(n, 0.2, rng);
        case 1: return oracle::erdos_renyi(n, 0.4, rng);
        case 2: {
            int w = 2 + static_cast<int>(rng() % 3);
            return oracle::grid(w, std::max(1, n / w));
        }
        default: return oracle::unit_disk(n, 0.3 + 0.3 * static_cast<double>(rng() % 100) / 100.0, rng);
    }
}

const std::vector<std::string> kBuiltinSets = {"K2", "K3", "K4", "P3", "P4", "P5", "C4", "C5", "star3", "claw",
                                               "K3,P4", "C4,C5", "K2+K2"};

// 1. exact solver vs exhaustive subsets
void exact_oracle(Outcome& out) {
    std::mt19937_64 rng(101);
    std::size_t checks = 0;
    for (int i = 0; i < kOracleGraphs; ++i) {
        auto g = small_host(rng, kOracleMaxN, i);
        for (Mode mode : {Mode::Subgraph, Mode::Induced}) {
            for (const auto& list : kBuiltinSets) {
                auto fs = fset(list, mode);
                auto sol = exact_branching_solver(g, fs);
                int expect = oracle_opt(g, fs);
                ++checks;
                if (!sol || static_cast<int>(sol->size()) != expect)
                    out.fail(list + "/" + std::string(mode_name(mode)) + " on " + describe(g) + ": got " +
                             (sol ? std::to_string(sol->size()) : "none") + ", oracle " + std::to_string(expect));
            }
        }
    }
    out.detail << checks << " (graph, pattern set, mode) checks";
}

// 2. every solver path returns sets that verify re-enumeration accepts
void end_to_end_validity(Outcome& out) {
    struct Instance {
        std::string name;
        Graph g;
    };
    std::vector<Instance> instances;
    std::mt19937_64 rng(102);
    for (int i = 0; i < 24; ++i) instances.push_back({"small#" + std::to_string(i), small_host(rng, kRatioMaxN, i)});
    instances.push_back({"grid15x15", gen("grid", 225)});
    instances.push_back({"trigrid12x12", gen("grid", 144, {{"diagonals", 1}})});
    instances.push_back({"unit-disk300", gen("unit-disk", 300, {}, 5)});
    instances.push_back({"bounded-degree200", gen("bounded-degree-random", 200, {{"degree", 3}}, 6)});
    instances.push_back({"segments120", gen("segment-intersection", 120, {}, 7)});
    instances.push_back({"friendship8", gen("friendship", 0, {{"k", 8}})});
    instances.push_back({"cliques", gen("disjoint-cliques", 0, {{"size", 5}, {"count", 6}})});
    instances.push_back({"K6,6", gen("complete-bipartite", 0, {{"a", 6}, {"b", 6}})});

    const std::vector<std::string> lists = {"K2", "K3", "P3", "C4", "claw", "K3,P4", "K2+K2"};
    const std::vector<std::string> solvers = {"exact",    "separator",     "baker",           "carve+exact",
                                              "reduction", "general",      "clique-wrapper", "biclique-wrapper"};
    std::size_t runs = 0, not_applicable = 0, over_budget = 0;
    for (const auto& inst : instances) {
        for (const auto& list : lists) {
            for (Mode mode : {Mode::Subgraph, Mode::Induced}) {
                auto fs = fset(list, mode);
                for (const auto& solver : solvers) {
                    if (solver == "exact" && inst.g.order() > 40) continue;
                    RunConfig rc;
                    rc.solver = solver;
                    rc.inner = inst.g.order() > 40 ? "separator" : "exact";
                    rc.solver_config.max_component = 24;
                    rc.solver_config.beta = Rational(1, 4);
                    rc.solver_config.exact.node_limit = kValidityNodeLimit;
                    auto t = std::chrono::steady_clock::now();
                    try {
                        auto sol = run_solver(inst.g, fs, Rational(1), rc);
                        if (verbose)
                            std::cerr << solver << " " << list << "/" << mode_name(mode) << " on " << inst.name << ": "
                                      << seconds_since(t) << "s\n";
                        ++runs;
                        auto v = verify(inst.g, fs, sol.vertices);
                        if (!v.valid || !sol.valid)
                            out.fail(solver + " " + list + "/" + std::string(mode_name(mode)) + " on " + inst.name +
                                     ": " + std::to_string(v.surviving) + " surviving");
                    } catch (const BudgetExceeded&) {
                        ++over_budget;  // no solution returned, nothing to verify
                        if (verbose) std::cerr << solver << " " << list << " on " << inst.name << ": budget after " << seconds_since(t) << "s\n";
                    } catch (const InputError&) {
                        ++not_applicable;  // e.g. disconnected pattern for a connected-only path, induced wrappers
                    } catch (const std::exception& e) {
                        out.fail(solver + " " + list + " on " + inst.name + " threw: " + e.what());
                    }
                }
            }
        }
    }
    out.detail << runs << " solver runs verified, " << not_applicable << " combinations not applicable, " << over_budget
               << " stopped at the node budget";
}

// 3. theory-grade pipeline with exact inner solver
void theory_ratio(Outcome& out) {
    std::vector<std::pair<std::string, Graph>> hosts;
    for (int n = 6; n <= kRatioMaxN; n += 3) {
        hosts.push_back({"path" + std::to_string(n), gen("path", n)});
        hosts.push_back({"cycle" + std::to_string(n), gen("cycle", n)});
        hosts.push_back({"tree" + std::to_string(n), gen("random-tree", n, {}, static_cast<std::uint64_t>(n))});
        hosts.push_back({"forest" + std::to_string(n),
                         disjoint_union(gen("random-tree", n / 2, {}, 3), gen("random-tree", n - n / 2, {}, 4))});
    }
    for (auto [w, h] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 4}, {4, 4}, {3, 6}, {2, 9}})
        hosts.push_back({"grid" + std::to_string(w) + "x" + std::to_string(h),
                         gen("grid", w * h, {{"w", double(w)}, {"h", double(h)}})});

    std::size_t checked = 0, skipped = 0;
    for (const auto& [name, g] : hosts) {
        for (const char* list : {"K2", "P3", "P4", "C4", "claw"}) {
            for (Rational eps : {Rational(1, 2), Rational(1)}) {
                auto fs = fset(list);
                PipelineOptions o;
                o.theory_grade = true;
                try {
                    auto sol = hitting_connected(g, fs, eps, make_solver("exact"), o);
                    int opt = oracle_opt(g, fs);
                    ++checked;
                    if (!sol.valid || Rational(static_cast<std::int64_t>(sol.size())) > (Rational(1) + eps) * Rational(opt))
                        out.fail(std::string(list) + " on " + name + " eps=" + eps.str() + ": |S|=" +
                                 std::to_string(sol.size()) + " opt=" + std::to_string(opt));
                } catch (const BudgetExceeded& e) {
                    if (std::string(e.what()).rfind("theory-grade", 0) != 0) throw;
                    ++skipped;
                }
            }
        }
    }
    out.detail << checked << " runs checked, " << skipped << " skipped for parameter overflow";
    if (checked == 0) out.fail("nothing checked");
}

// 4. after the loop Gamma* is unchanged; every minimal heavy set of G1 is hit by S1 or S1'
void reduction_audits(Outcome& out) {
    std::mt19937_64 rng(104);
    const char* lists[] = {"K2", "P3", "K3", "C4", "P4", "claw"};
    std::size_t nontrivial = 0;
    for (int i = 0; i < kAuditInstances; ++i) {
        int n = 6 + static_cast<int>(rng() % 10);
        Graph g = i % 3 == 0 ? oracle::unit_disk(n, 0.45, rng) : oracle::erdos_renyi(n, 0.25 + 0.05 * (i % 5), rng);
        auto fs = fset(lists[i % 6]);
        PipelineOptions o;
        o.audit_fact = true;
        ReductionParams p;
        p.epsilon = Rational(1);
        p.delta = 2 + i % 3;
        p.delta_prime = 3 + i % 4;
        o.params = p;
        auto sol = hitting_connected(g, fs, Rational(1), make_solver("exact"), o);
        const auto& t = *sol.trace;
        if (!t.redundant.empty()) ++nontrivial;
        if (!t.fact_minimal_sets_preserved || !*t.fact_minimal_sets_preserved)
            out.fail("minimal sets changed on instance " + std::to_string(i) + " " + describe(g));
        if (!t.heavy_sets_hit) out.fail("heavy set missed on instance " + std::to_string(i) + " " + describe(g));
        if (!sol.valid) out.fail("invalid lift on instance " + std::to_string(i));
    }
    out.detail << kAuditInstances << " instances, " << nontrivial << " with a non-empty redundant set";
}

// 5. weak colouring numbers of paths and WR sets vs path enumeration
void wreach(Outcome& out) {
    std::size_t checks = 0;
    for (int n = 1; n <= 50; ++n) {
        auto g = gen("path", n);
        auto sigma = VertexOrdering::identity(n);
        measure_wcol(g, sigma, 6);
        for (int r = 0; r <= 6; ++r) {
            ++checks;
            if (sigma.wcol[static_cast<std::size_t>(r)] != std::min(r + 1, n))
                out.fail("P" + std::to_string(n) + " r=" + std::to_string(r) + ": wcol " +
                         std::to_string(sigma.wcol[static_cast<std::size_t>(r)]));
        }
    }
    std::mt19937_64 rng(105);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);
        Graph g = trial < 11 ? gen("path", n) : oracle::erdos_renyi(n, 0.3, rng);
        std::vector<Vertex> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        if (trial >= 11) std::shuffle(order.begin(), order.end(), rng);
        auto sigma = VertexOrdering::from_order(order);
        for (int r = 0; r <= 4; ++r) {
            ++checks;
            if (weak_reachability(g, sigma, r).sets != oracle::weak_reachability(g, sigma, r))
                out.fail("WR mismatch " + describe(g) + " r=" + std::to_string(r));
        }
    }
    out.detail << checks << " identities checked";
}

// 6. families above the sunflower bound always contain an r-sunflower
void sunflowers(Outcome& out) {
    std::mt19937_64 rng(106);
    std::size_t total_sets = 0, at_bound_total = 0, at_bound_missing = 0;
    for (int i = 0; i < kSunflowerFamilies; ++i) {
        int k = 1 + i % 4;
        int r = 2 + (i / 4) % 3;
        std::size_t need = 1;
        for (int j = 0; j < k; ++j) need *= static_cast<std::size_t>(r - 1);
        for (int j = 2; j <= k; ++j) need *= static_cast<std::size_t>(j);
        const std::size_t bound = need;
        // The guarantee needs strictly more sets than the bound; every other family sits exactly on it.
        const bool at_bound = i % 2 == 1;
        if (!at_bound) need += 1 + static_cast<std::size_t>(rng() % 3);
        // Smallest universe with enough distinct k-sets, plus some slack.
        int u = k;
        auto binom = [](int a, int b) {
            double c = 1;
            for (int j = 0; j < b; ++j) c = c * (a - j) / (j + 1);
            return c;
        };
        while (binom(u, k) < static_cast<double>(need)) ++u;
        u += static_cast<int>(rng() % 6);
        std::set<VertexSet> family;
        while (family.size() < need) {
            VertexSet s;
            while (static_cast<int>(s.size()) < k) {
                Vertex v = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(u));
                if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
            }
            std::sort(s.begin(), s.end());
            family.insert(s);
        }
        std::vector<VertexSet> sets(family.begin(), family.end());
        total_sets += sets.size();
        auto sf = find_sunflower(sets, r);
        if (at_bound) {
            ++at_bound_total;
            at_bound_missing += !sf;
        }
        if (!sf) {
            if (!at_bound)
                out.fail("no sunflower: k=" + std::to_string(k) + " r=" + std::to_string(r) + " |family|=" +
                         std::to_string(sets.size()) + " > " + std::to_string(bound));
            continue;
        }
        std::vector<VertexSet> members;
        for (auto id : sf->members) members.push_back(sets[id]);
        std::set<std::size_t> distinct(sf->members.begin(), sf->members.end());
        VertexSet core;
        if (static_cast<int>(members.size()) != r || distinct.size() != members.size() ||
            !oracle::is_sunflower(members, &core) || core != sf->core)
            out.fail("bad sunflower: k=" + std::to_string(k) + " r=" + std::to_string(r));
    }
    out.detail << kSunflowerFamilies << " families, " << total_sets << " sets; exactly at the bound "
               << at_bound_missing << "/" << at_bound_total << " had none (informational)";
}

// 7. decompositions on every generator family
void decompositions(Outcome& out) {
    std::vector<GeneratorSpec> specs = {
        {"grid", kDecompMaxN, {{"w", 10}, {"h", 20}}, 1},
        {"grid", 150, {{"w", 10}, {"h", 15}, {"diagonals", 1}}, 1},
        {"unit-disk", kDecompMaxN, {{"radius", 0.12}}, 2},
        {"bounded-degree-random", kDecompMaxN, {{"degree", 5}}, 3},
        {"disjoint-cliques", 0, {{"size", 6}, {"count", 33}}, 1},
        {"friendship", 0, {{"k", 99}}, 1},
        {"segment-intersection", 150, {}, 4},
        {"erdos-renyi", 120, {{"p", 0.08}}, 5},
        {"erdos-renyi", 40, {{"p", 0.5}}, 6},
        {"path", kDecompMaxN, {}, 1},
        {"cycle", kDecompMaxN, {}, 1},
        {"complete", 30, {}, 1},
        {"complete-bipartite", 0, {{"a", 12}, {"b", 14}}, 1},
        {"random-tree", kDecompMaxN, {}, 7},
    };
    std::size_t audits = 0, clique_parts = 0, biclique_parts = 0;
    for (const auto& spec : specs) {
        auto g = generate(spec);
        for (int k = 1; k <= kDecompMaxK; ++k) {
            auto d1 = clique_decomposition_degeneracy(g, k);
            auto d2 = clique_decomposition_divide_conquer(g, k);
            auto b = biclique_decomposition(g, k);
            clique_parts += d1.cliques.size() + d2.cliques.size();
            biclique_parts += b.bicliques.size();
            for (auto [which, audit] : {std::pair{"degeneracy", audit_decomposition(g, d1, k)},
                                        std::pair{"divide-conquer", audit_decomposition(g, d2, k)},
                                        std::pair{"biclique", audit_decomposition(g, b, k)}}) {
                ++audits;
                if (!audit.valid) out.fail(std::string(which) + " k=" + std::to_string(k) + " on " + spec.describe() + ": " + audit.reason);
            }
        }
    }
    out.detail << audits << " audits, " << clique_parts << " clique parts, " << biclique_parts << " biclique parts";
}

// 8. wrapper ratios
void wrapper_ratios(Outcome& out) {
    auto inner = make_solver("exact");
    std::size_t checks = 0;
    auto check = [&](const std::string& what, const Graph& g, const PatternSet& fs, const Rational& eps, bool biclique,
                     std::int64_t opt) {
        auto s = biclique ? biclique_wrapper_hitting(g, fs, eps, inner) : clique_wrapper_hitting(g, fs, eps, inner);
        Rational bound = (Rational(biclique ? 2 : 1) + eps) * Rational(opt);
        ++checks;
        if (!s.valid || Rational(static_cast<std::int64_t>(s.size())) > bound)
            out.fail(what + (biclique ? " biclique" : " clique") + " eps=" + eps.str() + ": |S|=" + std::to_string(s.size()) +
                     " opt=" + std::to_string(opt));
    };
    std::mt19937_64 rng(108);
    const char* lists[] = {"K2", "K3", "P3", "C4", "K4", "claw", "K3,P3"};
    for (int i = 0; i < 120; ++i) {
        int n = 6 + static_cast<int>(rng() % static_cast<std::uint64_t>(kRatioMaxN - 5));
        Graph g = i % 4 == 3 ? oracle::unit_disk(n, 0.5, rng) : oracle::erdos_renyi(n, 0.3 + 0.1 * (i % 4), rng);
        auto fs = fset(lists[i % 7]);
        int opt = oracle_opt(g, fs);
        for (Rational eps : {Rational(1, 2), Rational(1), Rational(2)}) {
            check("random#" + std::to_string(i), g, fs, eps, false, opt);
            bool has_bipartite = std::any_of(fs.patterns.begin(), fs.patterns.end(),
                                             [](const Pattern& p) { return is_bipartite(p.graph); });
            if (has_bipartite) check("random#" + std::to_string(i), g, fs, eps, true, opt);
        }
    }
    for (int n = 3; n <= kClosedFormMaxN; ++n)
        for (Rational eps : {Rational(1, 2), Rational(1)}) check("K" + std::to_string(n), gen("complete", n), fset("K3"), eps, false, n - 2);
    for (int w = 1; w <= kClosedFormMaxN; ++w)
        for (int h = w; w * h <= kClosedFormMaxN; ++h) {
            if ((w * h) % 2 || w * h < 2) continue;
            auto g = gen("grid", w * h, {{"w", double(w)}, {"h", double(h)}});
            for (Rational eps : {Rational(1, 2), Rational(1)})
                for (bool bi : {false, true})
                    check("grid" + std::to_string(w) + "x" + std::to_string(h), g, fset("K2"), eps, bi, w * h / 2);
        }
    out.detail << checks << " ratio checks";
}

// 9. Baker layering with epsilon = 1
void baker(Outcome& out) {
    std::size_t exact_checks = 0, bound_checks = 0, unresolved = 0;
    std::vector<std::pair<std::string, Graph>> hosts;
    for (int n : {8, 13, 18, 60, 200, kBakerMaxN}) {
        hosts.push_back({"path" + std::to_string(n), gen("path", n)});
        hosts.push_back({"cycle" + std::to_string(n), gen("cycle", n)});
        // With epsilon = 1 there is a single piece per component, so dense hosts are only used while small.
        for (std::uint64_t seed : {1u, 2u}) {
            hosts.push_back({"unit-disk" + std::to_string(n) + "#" + std::to_string(seed), gen("unit-disk", n, {}, seed)});
            if (n <= 60)
                hosts.push_back({"dense-unit-disk" + std::to_string(n) + "#" + std::to_string(seed),
                                 gen("unit-disk", n, {{"radius", 1.6 / std::sqrt(double(n))}}, seed)});
        }
    }
    for (const auto& [name, g] : hosts) {
        for (const char* list : {"K2", "K3"}) {
            auto fs = fset(list);
            ExactOptions piece_budget;
            piece_budget.node_limit = 20'000'000;
            Solution s;
            try {
                s = baker_layering(g, fs, Rational(1), piece_budget);
            } catch (const BudgetExceeded&) {
                out.fail(std::string(list) + " on " + name + ": piece budget exceeded");
                continue;
            }
            if (!s.valid) out.fail(std::string(list) + " on " + name + ": invalid");
            const auto size = static_cast<std::int64_t>(s.size());
            if (g.order() <= kRatioMaxN) {
                ++exact_checks;
                int opt = oracle_opt(g, fs);
                if (size > 2 * opt) out.fail(std::string(list) + " on " + name + ": " + std::to_string(size) + " > 2*" + std::to_string(opt));
                continue;
            }
            // Lower bound first: a matching for K2, a greedy disjoint packing for K3.
            std::int64_t lower = std::string(list) == "K2"
                                     ? oracle::max_matching(g)
                                     : static_cast<std::int64_t>(disjoint_lower_bound(enumerate_occurrences(g, fs).sets()));
            if (size <= 2 * lower) {
                ++bound_checks;
                continue;
            }
            ExactOptions budget;
            budget.node_limit = 5'000'000;
            try {
                auto opt = exact_branching_solver(g, fs, budget);
                ++exact_checks;
                if (size > 2 * static_cast<std::int64_t>(opt->size()))
                    out.fail(std::string(list) + " on " + name + ": " + std::to_string(size) + " > 2*" + std::to_string(opt->size()));
            } catch (const BudgetExceeded&) {
                ++unresolved;
                out.detail << "[" << list << " on " << name << ": " << lower << " <= opt, |S|=" << size << "] ";
            }
        }
    }
    out.detail << exact_checks << " against exact opt, " << bound_checks << " certified by lower bound, " << unresolved
               << " unresolved";
}

// 10. near-linear scaling of the separator scheme on grids
void scaling(Outcome& out) {
    for (bool diagonals : {false, true}) {
        std::vector<double> ns, secs;
        for (int n : {1000, 10000, 100000}) {
            auto g = gen("grid", n, {{"diagonals", diagonals ? 1.0 : 0.0}});
            SeparatorSchemeOptions o;
            o.max_component = kScalingComponent;
            std::vector<double> runs;
            Solution s;
            for (int rep = 0; rep < 3; ++rep) {
                auto t = std::chrono::steady_clock::now();
                s = separator_scheme(g, fset("K3"), Rational(1), o);
                runs.push_back(seconds_since(t));
            }
            std::sort(runs.begin(), runs.end());
            ns.push_back(n);
            secs.push_back(runs[1]);
            if (!s.valid) out.fail("invalid at n=" + std::to_string(n));
            out.detail << (diagonals ? "triangulated" : "plain") << " n=" << n << " " << runs[1] << "s |S|=" << s.size() << ", ";
        }
        auto fit = fit_loglog(ns, secs);
        out.detail << "slope " << fit.slope << (diagonals ? "" : "; ");
        if (fit.slope > kSlopeLimit) out.fail(std::string(diagonals ? "triangulated" : "plain") + " slope " + std::to_string(fit.slope));
        if (secs.back() > kLargestRunSeconds) out.fail("n=1e5 took " + std::to_string(secs.back()) + "s");
    }
}

// 11. shallow-minor expansion vs direct minor models
void shallow_minor(Outcome& out) {
    auto c4 = fset("C4");
    auto expanded = shallow_minor_expansion(c4, 1, kMinorCap);
    std::mt19937_64 rng(111);
    int agree = 0, minor_yes = 0;
    for (int i = 0; i < kMinorGraphs; ++i) {
        int n = 4 + static_cast<int>(rng() % 5);
        double p = 0.15 + 0.45 * static_cast<double>(rng() % 1000) / 999.0;
        auto g = oracle::erdos_renyi(n, p, rng);
        bool minor = oracle::has_shallow_minor(g, c4.patterns[0].graph, 1);
        bool sub = std::any_of(expanded.patterns.begin(), expanded.patterns.end(),
                               [&](const Pattern& h) { return oracle::has_subgraph(g, h.graph); });
        minor_yes += minor;
        if (minor == sub) {
            ++agree;
        } else {
            // Expected culprit: a long cycle (C6..C8) is a 1-shallow C4 minor but exceeds the cap.
            std::string cycles;
            for (int len = kMinorCap + 1; len <= 8; ++len)
                if (len <= n && oracle::has_subgraph(g, builtin_pattern("C" + std::to_string(len)).graph))
                    cycles += " C" + std::to_string(len);
            std::ostringstream why;
            why << "graph #" << i << " " << describe(g) << ": minor=" << minor << " expanded=" << sub
                << " long cycles:" << (cycles.empty() ? " none" : cycles);
            out.fail(why.str());
        }
    }
    out.detail << agree << "/" << kMinorGraphs << " agree (" << minor_yes << " contain the minor), |F'|="
               << expanded.patterns.size() << " at cap " << kMinorCap;
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion");
    app.add_flag("--verbose", verbose, "per-run timings on stderr");
    std::vector<int> expected_failures;
    app.add_option("--expect-fail", expected_failures, "criteria known to fail; any other outcome is an error");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "exact solver equals exhaustive minimum", exact_oracle},
        {2, "every solver path verifies", end_to_end_validity},
        {3, "theory-grade pipeline ratio", theory_ratio},
        {4, "reduction audits", reduction_audits},
        {5, "weak reachability identities", wreach},
        {6, "sunflower witnesses", sunflowers},
        {7, "decomposition validity", decompositions},
        {8, "wrapper ratios", wrapper_ratios},
        {9, "Baker ratio", baker},
        {10, "near-linear scaling", scaling},
        {11, "shallow-minor expansion", shallow_minor},
    };
    std::set<int> failed;
    std::set<int> ran;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        Outcome out;
        auto t = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.fail(std::string("threw: ") + e.what());
        }
        std::cout << (out.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << "  (" << out.detail.str() << "; "
                  << seconds_since(t) << "s)\n";
        for (const auto& f : out.failures) std::cout << "      " << f << '\n';
        std::cout.flush();
        ran.insert(c.id);
        if (!out.pass) failed.insert(c.id);
    }
    std::set<int> expected;
    for (int id : expected_failures)
        if (ran.count(id)) expected.insert(id);
    if (!expected.empty()) {
        std::cout << "expected failures:";
        for (int id : expected) std::cout << ' ' << id;
        std::cout << (failed == expected ? "  (matched)\n" : "  (NOT matched)\n");
    }
    return failed == expected ? 0 : 1;
}
