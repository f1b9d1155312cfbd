#pragma once

#include <stdexcept>
#include <string>

namespace bohm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |psi| below the singular threshold: velocity undefined at a node.
struct NodeSingularity : Error {
    using Error::Error;
};

// A denominator of the nodal-point formula vanished; the node escapes to infinity.
struct NodeAtInfinity : Error {
    using Error::Error;
};

struct StepUnderflow : Error {
    using Error::Error;
};

struct ZeroDeviation : Error {
    using Error::Error;
};

// Two distinct integer frequency combinations evaluate equal for the given c.
struct FrequencyCollision : Error {
    using Error::Error;
};

struct InvalidTruncation : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct EnvelopeViolation : Error {
    using Error::Error;
};

struct EmptyRegion : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct SchemaMismatch : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace bohm
