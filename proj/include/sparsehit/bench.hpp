#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsehit/decomposition.hpp"
#include "sparsehit/generators.hpp"
#include "sparsehit/graph.hpp"
#include "sparsehit/pattern.hpp"
#include "sparsehit/rational.hpp"
#include "sparsehit/reduction.hpp"
#include "sparsehit/solution.hpp"
#include "sparsehit/solvers.hpp"

namespace sparsehit {

struct RunConfig {
    // exact | separator | baker | carve+exact | reduction | general | clique-wrapper | biclique-wrapper
    std::string solver = "exact";
    std::string inner = "exact";  // used by reduction, general and the wrappers
    SolverConfig solver_config;
    PipelineOptions pipeline;
};

Solution run_solver(const Graph& g, const PatternSet& fs, const Rational& epsilon, const RunConfig& config);

struct RunReport {
    std::string instance;
    int n = 0;
    std::size_t m = 0;
    std::string solver;
    std::map<std::string, std::string> params;
    std::size_t size = 0;
    std::optional<std::int64_t> opt;
    std::optional<double> ratio;  // only with opt
    std::map<std::string, double> timings_ms;
    double total_ms = 0;
    bool valid = false;
    std::string error;  // non-empty when the run failed
};

nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const Solution& solution);
nlohmann::json to_json(const ReductionTrace& trace);
nlohmann::json to_json(const CliqueDecomposition& d);
nlohmann::json to_json(const BicliqueDecomposition& d);
nlohmann::json to_json(const GeneratorSpec& spec);

GeneratorSpec spec_from_json(const nlohmann::json& j);

// A JSON array of specs or one spec object per line.
std::vector<GeneratorSpec> read_specs(std::istream& in);

struct BenchOptions {
    RunConfig run;
    int oracle_max_n = 0;  // run the exact solver for opt when n <= this
    int workers = 1;
};

// Reports come back in spec order; a failing instance records its error and the sweep goes on.
std::vector<RunReport> bench(const std::vector<GeneratorSpec>& specs, const PatternSet& fs, const Rational& epsilon,
                             const BenchOptions& options);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    std::size_t points = 0;
};

// Least squares fit of log(y) against log(x); pairs with non-positive values are ignored.
SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace sparsehit
