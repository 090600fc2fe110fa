#pragma once

#include <stdexcept>

namespace sparsehit {

// Malformed input: bad files, unknown vertex ids, invalid parameters.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured work limit was hit before the computation finished.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computed solution failed its post-check.
struct ValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sparsehit
