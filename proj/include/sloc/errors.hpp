#pragma once

#include <stdexcept>
#include <string>

namespace sloc {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Grid cannot represent the oscillation or curvature it is asked to carry.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Seed whose positive and negative wavenumber parts are parallel (eta = 1/2).
struct DegenerateSeedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sloc
