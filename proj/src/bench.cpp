#include "sparsehit/bench.hpp"

#include <atomic>
#include <cmath>
#include <istream>
#include <sstream>
#include <thread>

#include "sparsehit/errors.hpp"

namespace sparsehit {

using nlohmann::json;

Solution run_solver(const Graph& g, const PatternSet& fs, const Rational& epsilon, const RunConfig& config) {
    if (epsilon <= Rational(0)) throw InputError("epsilon must be positive");
    const auto& name = config.solver;
    if (name == "reduction")
        return hitting_connected(g, fs, epsilon, make_solver(config.inner, config.solver_config), config.pipeline);
    if (name == "general") {
        GeneralOptions o;
        o.pipeline = config.pipeline;
        o.node_limit = config.solver_config.exact.node_limit;
        return hitting_general(g, fs, epsilon, make_solver(config.inner, config.solver_config), o);
    }
    if (name == "clique-wrapper") return clique_wrapper_hitting(g, fs, epsilon, make_solver(config.inner, config.solver_config));
    if (name == "biclique-wrapper")
        return biclique_wrapper_hitting(g, fs, epsilon, make_solver(config.inner, config.solver_config));
    return make_solver(name, config.solver_config)(g, fs, epsilon);
}

json to_json(const RunReport& r) {
    json j;
    j["instance"] = r.instance;
    j["n"] = r.n;
    j["m"] = r.m;
    j["solver"] = r.solver;
    j["params"] = r.params;
    j["size"] = r.size;
    j["opt"] = r.opt ? json(*r.opt) : json(nullptr);
    j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
    j["valid"] = r.valid;
    if (!r.error.empty()) j["error"] = r.error;
    j["timings_ms"] = r.timings_ms;
    j["total_ms"] = r.total_ms;
    return j;
}

json to_json(const Solution& s) {
    json j;
    j["vertices"] = s.vertices;
    j["size"] = s.size();
    j["valid"] = s.valid;
    j["solver"] = s.solver;
    j["params"] = s.params;
    j["opt"] = s.opt ? json(*s.opt) : json(nullptr);
    j["timings_ms"] = s.timings_ms;
    return j;
}

json to_json(const ReductionTrace& t) {
    json j;
    j["params"] = {{"epsilon", t.params.epsilon.str()},
                   {"delta", t.params.delta},
                   {"delta_prime", t.params.delta_prime_exact.empty() ? std::to_string(t.params.delta_prime)
                                                                      : t.params.delta_prime_exact},
                   {"theory_grade", t.params.theory_grade}};
    j["occurrences"] = t.occurrences;
    j["redundant"] = t.redundant;
    j["minimal_heavy_sets"] = t.gamma_star_g;
    VertexSet removed;
    for (std::size_t v = 0; v < t.g1_alive.size(); ++v)
        if (!t.g1_alive[v]) removed.push_back(static_cast<Vertex>(v));
    j["pruned"] = removed;
    j["prune_checks"] = t.prune_checks;
    j["v_star"] = t.v_star;
    j["g2_edges"] = t.g2.edges();
    j["wcol"] = t.sigma.wcol;
    if (!t.s1.empty() || !t.s1_prime.empty()) {
        j["s1"] = t.s1;
        j["s1_prime"] = t.s1_prime;
        j["heavy_sets_hit"] = t.heavy_sets_hit;
        j["s1_prime_bound_holds"] = t.s1_prime_bound_holds;
    }
    if (t.fact_minimal_sets_preserved) j["fact_minimal_sets_preserved"] = *t.fact_minimal_sets_preserved;
    j["timings_ms"] = t.timings_ms;
    return j;
}

json to_json(const CliqueDecomposition& d) {
    return {{"v0", d.v0}, {"parts", d.cliques}};
}

json to_json(const BicliqueDecomposition& d) {
    json parts = json::array();
    for (const auto& [a, b] : d.bicliques) parts.push_back({a, b});
    return {{"v0", d.v0}, {"parts", parts}};
}

json to_json(const GeneratorSpec& spec) {
    json j = {{"family", spec.family}, {"n", spec.n}, {"seed", spec.seed}};
    for (const auto& [k, v] : spec.params) j[k] = v;
    return j;
}

GeneratorSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family")) throw InputError("generator spec needs a family");
    GeneratorSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "family") {
            spec.family = value.get<std::string>();
        } else if (key == "n") {
            spec.n = value.get<int>();
        } else if (key == "seed") {
            spec.seed = value.get<std::uint64_t>();
        } else if (key == "params" && value.is_object()) {
            for (const auto& [k, v] : value.items()) {
                if (!v.is_number()) throw InputError("generator parameter '" + k + "' must be numeric");
                spec.params[k] = v.get<double>();
            }
        } else if (value.is_number() || value.is_boolean()) {
            spec.params[key] = value.is_boolean() ? double(value.get<bool>()) : value.get<double>();
        } else {
            throw InputError("generator parameter '" + key + "' must be numeric");
        }
    }
    return spec;
}

std::vector<GeneratorSpec> read_specs(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::vector<GeneratorSpec> specs;
    try {
        auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '[') {
            for (const auto& j : json::parse(text)) specs.push_back(spec_from_json(j));
            return specs;
        }
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#') continue;
            specs.push_back(spec_from_json(json::parse(line)));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad spec file: ") + e.what());
    }
    return specs;
}

namespace {

RunReport run_one(const GeneratorSpec& spec, const PatternSet& fs, const Rational& epsilon, const BenchOptions& options) {
    RunReport r;
    r.instance = spec.describe();
    r.solver = options.run.solver;
    try {
        Graph g = generate(spec);
        r.n = g.order();
        r.m = g.size();
        Stopwatch clock;
        Solution s = run_solver(g, fs, epsilon, options.run);
        r.total_ms = clock.ms();
        r.solver = s.solver;
        r.params = s.params;
        r.size = s.size();
        r.timings_ms = s.timings_ms;
        r.valid = verify(g, fs, s.vertices, options.run.solver_config.exact.enumeration).valid;
        if (s.opt) {
            r.opt = s.opt;
        } else if (g.order() <= options.oracle_max_n) {
            r.opt = static_cast<std::int64_t>(exact_branching_solver(g, fs, options.run.solver_config.exact)->size());
        }
        if (r.opt) r.ratio = *r.opt == 0 ? (r.size == 0 ? 1.0 : INFINITY) : double(r.size) / double(*r.opt);
    } catch (const std::exception& e) {
        r.error = e.what();
        r.valid = false;
    }
    return r;
}

}  // namespace

std::vector<RunReport> bench(const std::vector<GeneratorSpec>& specs, const PatternSet& fs, const Rational& epsilon,
                             const BenchOptions& options) {
    std::vector<RunReport> reports(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < specs.size();) reports[i] = run_one(specs[i], fs, epsilon, options);
    };
    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(specs.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return reports;
}

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    SlopeFit fit;
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
        if (xs[i] <= 0 || ys[i] <= 0) continue;
        double x = std::log(xs[i]), y = std::log(ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++fit.points;
    }
    if (fit.points < 2) return fit;
    const double k = static_cast<double>(fit.points);
    const double denom = k * sxx - sx * sx;
    if (denom == 0) return fit;
    fit.slope = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / k;
    return fit;
}

}  // namespace sparsehit
