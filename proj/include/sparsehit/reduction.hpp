#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparsehit/graph.hpp"
#include "sparsehit/occurrences.hpp"
#include "sparsehit/ordering.hpp"
#include "sparsehit/pattern.hpp"
#include "sparsehit/rational.hpp"
#include "sparsehit/solution.hpp"
#include "sparsehit/solvers.hpp"

namespace sparsehit {

struct ReductionParams {
    Rational epsilon{1};
    std::int64_t delta = 4;
    std::int64_t delta_prime = 16;   // saturated at int64 max when the exact value is larger
    std::string delta_prime_exact;   // decimal value of the formula in theory-grade mode
    bool theory_grade = false;

    void validate() const;
};

struct ParameterOptions {
    std::int64_t class_constant = 4;  // surrogate for the neighbourhood-complexity constant c_G
    std::int64_t practical_delta = 0;  // 0: measured wcol_gamma(G, sigma) + 4, so that S1' stays selective
    std::int64_t practical_delta_prime = 16;
};

struct ParameterChoice {
    std::optional<ReductionParams> theory;  // nullopt when the formulas overflow
    std::string overflow_reason;
    ReductionParams practical;
    int wcol_gamma = 0;         // measured wcol_gamma(G, sigma)
    int wcol_double_gamma = 0;  // measured wcol_{2 gamma}(G, sigma)
};

// sigma must carry wcol measurements up to radius 2*gamma.
ParameterChoice default_parameters(const Graph& g, const PatternSet& fs, const Rational& epsilon,
                                   const VertexOrdering& sigma, const ParameterOptions& options = {});

struct ReductionTrace {
    VertexSet redundant;             // R
    std::vector<VertexSet> gamma_star_g;
    std::vector<char> g1_alive;      // vertices of G1; removed vertices stay as isolated ids
    Graph g1;
    VertexSet v_star;
    Graph g2;
    VertexOrdering sigma;
    std::vector<int> rho;
    VertexSet s1;
    VertexSet s1_prime;
    ReductionParams params;
    std::size_t occurrences = 0;
    std::size_t prune_checks = 0;

    // Audits filled in by the pipeline.
    std::optional<bool> fact_minimal_sets_preserved;  // Gamma*_{G1} == Gamma*_G
    bool heavy_sets_hit = false;                      // every X in Gamma*_{G1} meets S1 or S1'
    bool s1_prime_bound_holds = true;                 // |S1'| <= wcol/(delta - wcol) |S1| when delta > wcol
    std::map<std::string, double> timings_ms;
};

struct RedundantSet {
    VertexSet redundant;
    std::vector<VertexSet> gamma_star;
};

RedundantSet compute_redundant_set(const Graph& g, const OccurrenceIndex& occ, const ReductionParams& params, int gamma);

struct PruneResult {
    Graph g1;
    std::vector<char> alive;
    std::size_t checks = 0;
};

PruneResult prune_to_g1(const Graph& g, const RedundantSet& redundant, const OccurrenceIndex& occ,
                        const ReductionParams& params, int gamma);

struct DegreeFilter {
    Graph g2;
    VertexSet v_star;
};

DegreeFilter degree_filter_to_g2(const Graph& g1, const ReductionParams& params);

// Fills sigma, rho, s1, s1_prime and the audits in trace; returns S with validity checked on G.
Solution lift_solution(const Graph& g, ReductionTrace& trace, const Solution& s2, const PatternSet& fs,
                       const ReductionParams& params);

struct PipelineOptions {
    std::optional<ReductionParams> params;  // defaults: practical parameters
    bool theory_grade = false;              // use the theory-grade formulas instead
    ParameterOptions parameter_options;
    bool audit_fact = false;                // recompute Gamma*_{G1} after the loop
    EnumerationOptions enumeration;
};

// Stages up to G2 (enumeration, R, pruning, degree filter) without the inner solve.
std::shared_ptr<ReductionTrace> reduce_to_g2(const Graph& g, const PatternSet& fs, const Rational& epsilon,
                                             const PipelineOptions& options = {});

Solution hitting_connected(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner,
                           const PipelineOptions& options = {});

struct GeneralOptions {
    PipelineOptions pipeline;
    std::uint64_t node_limit = 50'000'000;
};

std::int64_t alpha_f(const Graph& g, const PatternSet& fs);

Solution hitting_general(const Graph& g, const PatternSet& fs, const Rational& epsilon, const InnerSolver& inner,
                         const GeneralOptions& options = {});

}  // namespace sparsehit
