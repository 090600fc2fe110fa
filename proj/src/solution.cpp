#include "sparsehit/solution.hpp"

#include <string>

#include "sparsehit/errors.hpp"

namespace sparsehit {

VerifyResult verify(const Graph& g, const PatternSet& fs, std::span<const Vertex> s, EnumerationOptions options) {
    for (Vertex v : s)
        if (v < 0 || v >= g.order()) throw InputError("solution vertex " + std::to_string(v) + " is not in the graph");
    Graph rest = remove_vertices(g, s);
    auto idx = enumerate_occurrences(rest, fs, options);
    return {idx.empty(), idx.size()};
}

void certify(Solution& solution, const Graph& g, const PatternSet& fs) {
    auto check = verify(g, fs, solution.vertices);
    solution.valid = check.valid;
    if (!check.valid)
        throw ValidityError(solution.solver + " left " + std::to_string(check.surviving) + " occurrences unhit");
}

}  // namespace sparsehit
