#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "sparsehit/graph.hpp"
#include "sparsehit/occurrences.hpp"
#include "sparsehit/pattern.hpp"

namespace sparsehit {

struct ReductionTrace;

struct Solution {
    VertexSet vertices;
    bool valid = false;
    std::string solver;
    std::map<std::string, std::string> params;
    std::map<std::string, double> timings_ms;
    std::optional<std::int64_t> opt;  // set when the solver proved optimality
    std::shared_ptr<const ReductionTrace> trace;

    std::size_t size() const { return vertices.size(); }
};

struct VerifyResult {
    bool valid = false;
    std::size_t surviving = 0;
};

// Re-enumerates occurrences in G - s.
VerifyResult verify(const Graph& g, const PatternSet& fs, std::span<const Vertex> s, EnumerationOptions options = {});

// Sets solution.valid from verify(); throws ValidityError when the set does not hit everything.
void certify(Solution& solution, const Graph& g, const PatternSet& fs);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }
    double lap() {
        double t = ms();
        start_ = std::chrono::steady_clock::now();
        return t;
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace sparsehit
