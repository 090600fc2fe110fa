#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "sparsehit/bench.hpp"
#include "sparsehit/decomposition.hpp"
#include "sparsehit/errors.hpp"
#include "sparsehit/generators.hpp"
#include "sparsehit/reduction.hpp"
#include "sparsehit/solvers.hpp"

using namespace sparsehit;
using nlohmann::json;

namespace {

struct ProblemArgs {
    std::string graph = "-";
    std::string patterns = "K3";
    std::string mode = "sub";
    std::string eps = "1";
};

void add_problem(CLI::App* cmd, ProblemArgs& a, bool with_eps) {
    cmd->add_option("--graph", a.graph, "edge-list file, '-' for stdin")->required();
    cmd->add_option("--patterns", a.patterns, "comma-separated pattern list (K3, P4, C5, claw, K2x3, K3+K2, or a file)");
    cmd->add_option("--mode", a.mode, "sub or ind");
    if (with_eps) cmd->add_option("--eps", a.eps, "epsilon, e.g. 1, 0.5 or 1/3");
}

Graph load_graph(const std::string& path) {
    if (path == "-") return read_edge_list(std::cin);
    return read_edge_list_file(path);
}

std::vector<std::string> labels_of(const Graph& g, const VertexSet& s) {
    std::vector<std::string> out;
    for (Vertex v : s) out.push_back(g.label(v));
    return out;
}

json solution_json(const Graph& g, const Solution& s) {
    json j = to_json(s);
    j["vertices"] = labels_of(g, s.vertices);
    return j;
}

VertexSet parse_vertex_list(const Graph& g, const std::string& text) {
    std::unordered_map<std::string, Vertex> ids;
    for (Vertex v = 0; v < g.order(); ++v) ids.emplace(g.label(v), v);
    std::vector<std::string> tokens;
    auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && (text[start] == '{' || text[start] == '[')) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw InputError(std::string("bad solution JSON: ") + e.what());
        }
        const json& list = j.is_object() ? j.at("vertices") : j;
        for (const auto& x : list) tokens.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    } else {
        std::string cleaned = text;
        for (char& c : cleaned)
            if (c == ',') c = ' ';
        std::istringstream in(cleaned);
        for (std::string t; in >> t;) tokens.push_back(t);
    }
    VertexSet s;
    for (const auto& t : tokens) {
        auto it = ids.find(t);
        if (it == ids.end()) throw InputError("unknown vertex '" + t + "'");
        s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump() << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparsehit: (induced) subgraph hitting on sparse graphs"};
    app.require_subcommand(1);

    ProblemArgs prob;
    std::string solver = "separator", inner = "exact", trace_path;
    std::int64_t delta = 0, delta_prime = 0;
    bool theory = false;
    std::size_t max_component = 0, max_size = 0;
    std::uint64_t seed = 1;
    std::size_t budget = EnumerationOptions{}.budget;

    auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--delta", delta, "sunflower threshold delta (default: wcol + 4)");
        cmd->add_option("--delta-prime", delta_prime, "degree threshold delta' (practical default 16)");
        cmd->add_flag("--theory-grade", theory, "use the theory-grade delta, delta' formulas");
        cmd->add_option("--budget", budget, "occurrence enumeration budget");
    };

    auto* solve = app.add_subcommand("solve", "approximate hitting set");
    add_problem(solve, prob, true);
    solve->add_option("--solver", solver,
                      "exact | separator | baker | carve+exact | reduction | general | clique-wrapper | biclique-wrapper");
    solve->add_option("--inner", inner, "inner solver for reduction, general and the wrappers");
    solve->add_option("--max-component", max_component, "component size for the separator scheme");
    solve->add_option("--seed", seed, "seed for ball carving");
    solve->add_option("--trace", trace_path, "write the reduction trace as JSON");
    add_solver_flags(solve);

    auto* exact = app.add_subcommand("exact", "exact minimum hitting set");
    add_problem(exact, prob, false);
    exact->add_option("--max-size", max_size, "give up above this size");
    exact->add_option("--budget", budget, "occurrence enumeration budget");

    int k = 3;
    std::string kind = "clique", method = "degeneracy";
    auto* decompose = app.add_subcommand("decompose", "k-clique or k-biclique decomposition");
    decompose->add_option("--graph", prob.graph)->required();
    decompose->add_option("--k", k)->required();
    decompose->add_option("--kind", kind, "clique or biclique")->check(CLI::IsMember({"clique", "biclique"}));
    decompose->add_option("--method", method, "degeneracy or divide-conquer (clique only)")
        ->check(CLI::IsMember({"degeneracy", "divide-conquer"}));

    auto* reduce = app.add_subcommand("reduce", "run the reduction and emit G2 with its trace");
    add_problem(reduce, prob, true);
    add_solver_flags(reduce);

    std::string solution_arg;
    auto* verify_cmd = app.add_subcommand("verify", "check that a vertex set hits every occurrence");
    add_problem(verify_cmd, prob, false);
    verify_cmd->add_option("--solution", solution_arg, "solution JSON, vertex list file, or a literal list like \"1,4,7\"")
        ->required();

    std::string sweep, output;
    int oracle_max_n = 0, workers = 1;
    auto* bench_cmd = app.add_subcommand("bench", "run a sweep of generated instances, one JSON report per line");
    bench_cmd->add_option("--sweep", sweep, "spec file (JSON array or JSON lines)")->required();
    bench_cmd->add_option("--patterns", prob.patterns);
    bench_cmd->add_option("--mode", prob.mode);
    bench_cmd->add_option("--eps", prob.eps);
    bench_cmd->add_option("--solver", solver);
    bench_cmd->add_option("--inner", inner);
    bench_cmd->add_option("--max-component", max_component);
    bench_cmd->add_option("--oracle-max-n", oracle_max_n, "compute opt exactly up to this many vertices");
    bench_cmd->add_option("--workers", workers);
    add_solver_flags(bench_cmd);

    GeneratorSpec gen;
    std::vector<std::string> gen_params;
    auto* generate_cmd = app.add_subcommand("generate", "write a generated graph as an edge list");
    generate_cmd->add_option("--family", gen.family)->required();
    generate_cmd->add_option("--n", gen.n);
    generate_cmd->add_option("--seed", gen.seed);
    generate_cmd->add_option("--param", gen_params, "key=value, repeatable");
    generate_cmd->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        auto config = [&] {
            RunConfig c;
            c.solver = solver;
            c.inner = inner;
            if (max_component) c.solver_config.max_component = max_component;
            c.solver_config.seed = seed;
            c.solver_config.exact.enumeration.budget = budget;
            c.pipeline.enumeration.budget = budget;
            c.pipeline.theory_grade = theory;
            if (delta) c.pipeline.parameter_options.practical_delta = delta;
            if (delta_prime) c.pipeline.parameter_options.practical_delta_prime = delta_prime;
            return c;
        };

        if (*solve) {
            Graph g = load_graph(prob.graph);
            auto fs = parse_pattern_list(prob.patterns, parse_mode(prob.mode));
            auto sol = run_solver(g, fs, Rational::parse(prob.eps), config());
            emit(solution_json(g, sol), "-");
            if (!trace_path.empty()) {
                if (!sol.trace) throw InputError("--trace needs the reduction or general solver");
                emit(to_json(*sol.trace), trace_path);
            }
            return sol.valid ? 0 : 1;
        }
        if (*exact) {
            Graph g = load_graph(prob.graph);
            auto fs = parse_pattern_list(prob.patterns, parse_mode(prob.mode));
            ExactOptions o;
            if (max_size) o.max_size = max_size;
            o.enumeration.budget = budget;
            auto sol = exact_branching_solver(g, fs, o);
            if (!sol) {
                emit(json{{"found", false}, {"max_size", max_size}}, "-");
                return 0;
            }
            emit(solution_json(g, *sol), "-");
            return 0;
        }
        if (*decompose) {
            Graph g = load_graph(prob.graph);
            json j;
            if (kind == "clique") {
                auto d = method == "degeneracy" ? clique_decomposition_degeneracy(g, k) : clique_decomposition_divide_conquer(g, k);
                std::sort(d.cliques.begin(), d.cliques.end());
                j = to_json(d);
            } else {
                auto d = biclique_decomposition(g, k);
                j = to_json(d);
            }
            emit(j, "-");
            return 0;
        }
        if (*reduce) {
            Graph g = load_graph(prob.graph);
            auto fs = parse_pattern_list(prob.patterns, parse_mode(prob.mode));
            auto trace = reduce_to_g2(g, fs, Rational::parse(prob.eps), config().pipeline);
            emit(to_json(*trace), "-");
            return 0;
        }
        if (*verify_cmd) {
            Graph g = load_graph(prob.graph);
            auto fs = parse_pattern_list(prob.patterns, parse_mode(prob.mode));
            std::string text = solution_arg;
            if (std::ifstream file(solution_arg); file) {
                std::stringstream buffer;
                buffer << file.rdbuf();
                text = buffer.str();
            }
            auto s = parse_vertex_list(g, text);
            auto res = verify(g, fs, s);
            emit(json{{"valid", res.valid}, {"surviving", res.surviving}, {"size", s.size()}}, "-");
            return res.valid ? 0 : 3;
        }
        if (*bench_cmd) {
            std::ifstream in(sweep);
            if (!in) throw InputError("cannot read " + sweep);
            auto specs = read_specs(in);
            auto fs = parse_pattern_list(prob.patterns, parse_mode(prob.mode));
            BenchOptions o;
            o.run = config();
            o.oracle_max_n = oracle_max_n;
            o.workers = workers;
            auto reports = bench(specs, fs, Rational::parse(prob.eps), o);
            std::vector<double> ns, ts;
            bool failed = false;
            for (const auto& r : reports) {
                std::cout << to_json(r).dump() << '\n';
                failed |= !r.valid;
                if (r.valid) {
                    ns.push_back(r.n);
                    ts.push_back(r.total_ms);
                }
            }
            auto fit = fit_loglog(ns, ts);
            std::cerr << "fitted log-log slope " << fit.slope << " over " << fit.points << " instances\n";
            return failed ? 1 : 0;
        }
        if (*generate_cmd) {
            for (const auto& kv : gen_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw InputError("--param expects key=value");
                try {
                    gen.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
                } catch (const std::exception&) {
                    throw InputError("bad numeric value in '" + kv + "'");
                }
            }
            Graph g = generate(gen);
            if (output.empty() || output == "-") {
                write_edge_list(std::cout, g);
            } else {
                std::ofstream out(output);
                if (!out) throw InputError("cannot write " + output);
                write_edge_list(out, g);
            }
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ValidityError& e) {
        std::cerr << "invalid solution: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
