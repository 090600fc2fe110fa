#include "sparsehit/reduction.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <unordered_set>

#include "sparsehit/errors.hpp"
#include "sparsehit/hitting_set.hpp"
#include "sparsehit/sunflower.hpp"

namespace sparsehit {

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct SetHash {
    std::size_t operator()(const VertexSet& s) const {
        std::size_t h = s.size();
        for (Vertex v : s) h = h * 1000003u ^ static_cast<std::size_t>(v);
        return h;
    }
};

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

bool contains_any_subset(std::span<const Vertex> s, const std::unordered_set<VertexSet, SetHash>& family) {
    VertexSet sub;
    for (std::uint32_t mask = 1; mask < (1u << s.size()); ++mask) {
        sub.clear();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask >> i & 1u) sub.push_back(s[i]);
        if (family.count(sub)) return true;
    }
    return false;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

void ReductionParams::validate() const {
    if (epsilon <= Rational(0)) throw InputError("epsilon must be positive");
    if (delta < 2) throw InputError("delta must be at least 2");
    if (delta_prime < 1) throw InputError("delta' must be at least 1");
}

ParameterChoice default_parameters(const Graph& g, const PatternSet& fs, const Rational& epsilon,
                                   const VertexOrdering& sigma, const ParameterOptions& options) {
    if (!fs.all_connected()) throw InputError("parameter formulas assume connected patterns");
    if (epsilon <= Rational(0)) throw InputError("epsilon must be positive");
    const int gamma = fs.gamma;
    if (sigma.radius < 2 * gamma || static_cast<int>(sigma.wcol.size()) <= 2 * gamma)
        throw InputError("ordering must carry wcol measurements up to radius 2*gamma");
    (void)g;

    ParameterChoice choice;
    choice.wcol_gamma = sigma.wcol[gamma];
    choice.wcol_double_gamma = sigma.wcol[2 * gamma];
    choice.practical.epsilon = epsilon;
    choice.practical.delta = options.practical_delta > 0 ? options.practical_delta : choice.wcol_gamma + 4;
    choice.practical.delta_prime = options.practical_delta_prime;
    choice.practical.theory_grade = false;

    // delta > (2+2e)/e * w1^(gamma+1) + ceil((4+e)/e * w2), with e = a/b.
    const BigInt a = epsilon.num(), b = epsilon.den();
    const BigInt w1 = choice.wcol_gamma, w2 = choice.wcol_double_gamma;
    BigInt first = (2 * a + 2 * b) * boost::multiprecision::pow(w1, static_cast<unsigned>(gamma + 1));
    BigInt second_num = (4 * b + a) * w2;
    BigInt second = (second_num + a - 1) / a;
    BigInt delta = first / a + second + 1;

    // delta' >= gamma (delta gamma^gamma)^gamma gamma! + w2 + (c (delta gamma^gamma)^(gamma+1) gamma! 2^gamma)^(3 gamma)
    const BigInt base = delta * boost::multiprecision::pow(BigInt(gamma), static_cast<unsigned>(gamma));
    const BigInt fact = factorial(gamma);
    BigInt delta_prime = gamma * boost::multiprecision::pow(base, static_cast<unsigned>(gamma)) * fact + w2 +
                         boost::multiprecision::pow(options.class_constant * boost::multiprecision::pow(base, static_cast<unsigned>(gamma + 1)) *
                                                        fact * (BigInt(1) << gamma),
                                                    static_cast<unsigned>(3 * gamma));

    const BigInt int_max = std::numeric_limits<std::int64_t>::max();
    if (delta > int_max) {
        choice.overflow_reason = "delta does not fit in 64 bits";
        return choice;
    }
    ReductionParams theory;
    theory.epsilon = epsilon;
    theory.delta = static_cast<std::int64_t>(delta);
    theory.delta_prime = delta_prime > int_max ? std::numeric_limits<std::int64_t>::max()
                                               : static_cast<std::int64_t>(delta_prime);
    theory.delta_prime_exact = delta_prime.str();
    theory.theory_grade = true;
    choice.theory = theory;
    return choice;
}

RedundantSet compute_redundant_set(const Graph& g, const OccurrenceIndex& occ, const ReductionParams& params, int gamma) {
    RedundantSet out;
    out.gamma_star = minimal_heavy_sets(occ, nullptr, params.delta, gamma);
    std::unordered_set<VertexSet, SetHash> stars(out.gamma_star.begin(), out.gamma_star.end());
    std::vector<char> covered(occ.size(), 0);
    if (!stars.empty())
        for (std::size_t i = 0; i < occ.size(); ++i) covered[i] = contains_any_subset(occ[i], stars);
    for (Vertex v = 0; v < g.order(); ++v) {
        auto ids = occ.containing(v);
        if (std::all_of(ids.begin(), ids.end(), [&](std::uint32_t id) { return covered[id] != 0; }))
            out.redundant.push_back(v);
    }
    return out;
}

PruneResult prune_to_g1(const Graph& g, const RedundantSet& redundant, const OccurrenceIndex& occ,
                        const ReductionParams& params, int gamma) {
    PruneResult res;
    res.alive.assign(static_cast<std::size_t>(g.order()), 1);
    const auto& stars = redundant.gamma_star;
    HeavyTester tester(occ, params.delta, gamma);

    // Each minimal heavy set keeps a witness sunflower; deleting a vertex outside every
    // witness leaves all of them heavy, so only sets whose witness it touches are retested.
    std::vector<VertexSet> witness_vertices(stars.size());
    std::vector<std::vector<std::size_t>> touching(static_cast<std::size_t>(g.order()));
    std::vector<char> in_star(static_cast<std::size_t>(g.order()), 0);
    std::vector<std::uint32_t> witness;
    auto record = [&](std::size_t x, const std::vector<std::uint32_t>& ids) {
        VertexSet vs;
        for (auto id : ids) vs.insert(vs.end(), occ[id].begin(), occ[id].end());
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        for (Vertex v : vs) touching[v].push_back(x);
        witness_vertices[x] = std::move(vs);
    };
    for (std::size_t x = 0; x < stars.size(); ++x) {
        for (Vertex v : stars[x]) in_star[v] = 1;
        if (!tester.heavy(stars[x], &res.alive, &witness)) throw std::logic_error("minimal heavy set is not heavy");
        record(x, witness);
    }

    for (Vertex v : redundant.redundant) {
        ++res.checks;
        if (in_star[v]) continue;  // a core cannot survive losing one of its own vertices
        std::vector<std::size_t> affected;
        for (std::size_t x : touching[v])
            if (std::binary_search(witness_vertices[x].begin(), witness_vertices[x].end(), v)) affected.push_back(x);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

        res.alive[v] = 0;
        std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> renewed;
        bool stable = true;
        for (std::size_t x : affected) {
            if (!tester.heavy(stars[x], &res.alive, &witness)) {
                stable = false;
                break;
            }
            renewed.emplace_back(x, witness);
        }
        if (!stable) {
            res.alive[v] = 1;
            continue;
        }
        for (auto& [x, ids] : renewed) record(x, ids);
    }
    res.g1 = restrict_edges(g, res.alive);
    return res;
}

DegreeFilter degree_filter_to_g2(const Graph& g1, const ReductionParams& params) {
    DegreeFilter out;
    std::vector<char> keep(static_cast<std::size_t>(g1.order()), 1);
    for (Vertex v = 0; v < g1.order(); ++v)
        if (g1.degree(v) >= params.delta_prime) {
            out.v_star.push_back(v);
            keep[v] = 0;
        }
    out.g2 = restrict_edges(g1, keep);
    return out;
}

Solution lift_solution(const Graph& g, ReductionTrace& trace, const Solution& s2, const PatternSet& fs,
                       const ReductionParams& params) {
    const int gamma = fs.gamma;
    if (trace.sigma.radius < gamma || static_cast<int>(trace.sigma.wcol.size()) <= gamma)
        trace.sigma = build_ordering(g, gamma);
    const int w = trace.sigma.wcol[gamma];

    trace.s1 = set_union(s2.vertices, trace.v_star);
    auto wr = weak_reachability(g, trace.sigma, gamma);
    trace.rho.assign(static_cast<std::size_t>(g.order()), 0);
    for (Vertex u : trace.s1)
        for (Vertex v : wr.sets[u]) ++trace.rho[v];
    trace.s1_prime.clear();
    for (Vertex v = 0; v < g.order(); ++v)
        if (trace.rho[v] >= params.delta - w) trace.s1_prime.push_back(v);

    Solution sol;
    sol.vertices = set_union(trace.s1, trace.s1_prime);

    trace.heavy_sets_hit = std::all_of(trace.gamma_star_g.begin(), trace.gamma_star_g.end(), [&](const VertexSet& x) {
        return std::any_of(x.begin(), x.end(), [&](Vertex v) { return std::binary_search(sol.vertices.begin(), sol.vertices.end(), v); });
    });
    if (params.delta > w)
        trace.s1_prime_bound_holds = static_cast<std::int64_t>(trace.s1_prime.size()) * (params.delta - w) <=
                                     static_cast<std::int64_t>(w) * static_cast<std::int64_t>(trace.s1.size());

    sol.solver = "reduction+" + s2.solver;
    sol.params["epsilon"] = params.epsilon.str();
    sol.params["delta"] = std::to_string(params.delta);
    sol.params["delta_prime"] = params.delta_prime_exact.empty() ? std::to_string(params.delta_prime) : params.delta_prime_exact;
    sol.params["theory_grade"] = params.theory_grade ? "true" : "false";
    sol.params["wcol_gamma"] = std::to_string(w);
    for (const auto& [k, v] : s2.params) sol.params["inner." + k] = v;
    certify(sol, g, fs);
    return sol;
}

std::shared_ptr<ReductionTrace> reduce_to_g2(const Graph& g, const PatternSet& fs, const Rational& epsilon,
                                             const PipelineOptions& options) {
    if (!fs.all_connected()) throw InputError("the reduction needs connected patterns");
    const int gamma = fs.gamma;
    Stopwatch clock;
    auto trace = std::make_shared<ReductionTrace>();
    auto occ = enumerate_occurrences(g, fs, options.enumeration);
    trace->occurrences = occ.size();
    trace->timings_ms["enumerate"] = clock.lap();

    ReductionParams params;
    if (options.theory_grade) {
        trace->sigma = build_ordering(g, 2 * gamma);
        auto choice = default_parameters(g, fs, epsilon, trace->sigma, options.parameter_options);
        if (!choice.theory) throw BudgetExceeded("theory-grade parameters overflow: " + choice.overflow_reason);
        params = *choice.theory;
    } else if (options.params) {
        params = *options.params;
        params.epsilon = epsilon;
    }
    if (trace->sigma.wcol.empty()) trace->sigma = build_ordering(g, gamma);
    if (!options.theory_grade && !options.params) {
        params.epsilon = epsilon;
        const auto& po = options.parameter_options;
        params.delta = po.practical_delta > 0 ? po.practical_delta : trace->sigma.wcol[gamma] + 4;
        params.delta_prime = po.practical_delta_prime;
    }
    params.validate();
    trace->params = params;
    trace->timings_ms["order"] = clock.lap();

    auto red = compute_redundant_set(g, occ, params, gamma);
    trace->redundant = red.redundant;
    trace->gamma_star_g = red.gamma_star;
    trace->timings_ms["R"] = clock.lap();

    auto pruned = prune_to_g1(g, red, occ, params, gamma);
    trace->g1 = std::move(pruned.g1);
    trace->g1_alive = std::move(pruned.alive);
    trace->prune_checks = pruned.checks;
    trace->timings_ms["prune"] = clock.lap();
    if (options.audit_fact)
        trace->fact_minimal_sets_preserved = minimal_heavy_sets(occ, &trace->g1_alive, params.delta, gamma) == red.gamma_star;

    auto filtered = degree_filter_to_g2(trace->g1, params);
    trace->g2 = std::move(filtered.g2);
    trace->v_star = std::move(filtered.v_star);
    trace->timings_ms["G2"] = clock.lap();
    return trace;
}

Solution hitting_connected(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner,
                           const PipelineOptions& options) {
    auto trace = reduce_to_g2(g, fs, epsilon, options);
    Stopwatch clock;
    Solution s2 = inner(trace->g2, fs, epsilon / Rational(4));
    trace->timings_ms["inner"] = clock.lap();

    Solution sol = lift_solution(g, *trace, s2, fs, trace->params);
    trace->timings_ms["lift"] = clock.lap();
    sol.params["redundant"] = std::to_string(trace->redundant.size());
    sol.params["v_star"] = std::to_string(trace->v_star.size());
    sol.params["s1_prime"] = std::to_string(trace->s1_prime.size());
    sol.timings_ms = trace->timings_ms;
    sol.trace = trace;
    return sol;
}

std::int64_t alpha_f(const Graph& g, const PatternSet& fs) {
    std::int64_t ell = 1, c = 1;
    for (const auto& p : fs.patterns)
        for (const auto& comp : connected_components(p.graph)) {
            c = std::max<std::int64_t>(c, static_cast<std::int64_t>(comp.size()));
        }
    for (const auto& p : fs.patterns)
        ell = std::max<std::int64_t>(ell, static_cast<std::int64_t>(connected_components(p.graph).size()));
    const auto count = static_cast<std::int64_t>(fs.patterns.size());
    if (fs.mode == Mode::Subgraph) return count * ell * c * c;
    const std::int64_t d = degeneracy_ordering(g).degeneracy;
    return count * ell * ell * c * c * c * std::max<std::int64_t>(d, 1);
}

Solution hitting_general(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner,
                         const GeneralOptions& options) {
    Stopwatch clock;
    const std::int64_t alpha = alpha_f(g, fs);
    const std::int64_t small = (Rational(5) * Rational(alpha) / epsilon).ceil();

    ExactOptions exact;
    exact.max_size = static_cast<std::size_t>(small);
    exact.node_limit = options.node_limit;
    exact.enumeration = options.pipeline.enumeration;
    // An inconclusive probe falls through to the pipeline; the result stays valid, only the
    // small-optimum branch of the guarantee is lost, and the params say so.
    std::optional<Solution> direct;
    bool probe_exhausted = false;
    try {
        direct = exact_branching_solver(g, fs, exact);
    } catch (const BudgetExceeded&) {
        probe_exhausted = true;
    }
    if (direct) {
        direct->solver = "general/small-opt";
        direct->params["alpha_f"] = std::to_string(alpha);
        direct->params["small_opt_bound"] = std::to_string(small);
        direct->timings_ms["small_opt"] = clock.lap();
        return *direct;
    }
    double small_ms = clock.lap();

    std::optional<Solution> best;
    for (const auto& connected : conn_expansion(fs)) {
        Solution s = hitting_connected(g, connected, epsilon / Rational(2), inner, options.pipeline);
        // A solution for a component choice also hits the original patterns; check on the original.
        certify(s, g, fs);
        if (!best || s.size() < best->size()) {
            s.params["conn_choice"] = connected.describe();
            best = std::move(s);
        }
    }
    best->solver = "general/" + best->solver;
    best->params["alpha_f"] = std::to_string(alpha);
    best->params["small_opt_bound"] = std::to_string(small);
    best->params["small_opt_probe"] = probe_exhausted ? "budget" : "above bound";
    best->timings_ms["small_opt"] = small_ms;
    return *best;
}

}  // namespace sparsehit
