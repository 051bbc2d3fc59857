#pragma once

#include <stdexcept>

namespace pf {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A layout construction step could not satisfy its exposure constraints.
struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant; signals a construction bug, not bad input.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace pf
