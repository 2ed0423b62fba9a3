#pragma once

#include <stdexcept>
#include <string>

namespace champ {

// Rejected input: bad edge list, mismatched lengths, malformed spec.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally valid input on which the requested quantity is undefined
// (e.g. modularity coefficients of a zero-weight network).
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace champ
