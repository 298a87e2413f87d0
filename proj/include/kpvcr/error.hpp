#pragma once

#include <stdexcept>
#include <string>

namespace kpvcr {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed graph construction (self-loop, duplicate edge, bad id).
struct GraphError : Error {
    using Error::Error;
};

// A set claimed to be a k-path vertex cover is not one (carries a witness
// path in the message).
struct InvalidCoverError : Error {
    using Error::Error;
};

// A caller violated an operation's contract (bad indices, frozen rotation
// start, cutting at a vertex outside I and J, ...).
struct PreconditionError : Error {
    using Error::Error;
};

// Exhaustive state enumeration would exceed the configured budget.
struct BudgetError : Error {
    using Error::Error;
};

// Instance / sequence file syntax or validation failure.
struct ParseError : Error {
    using Error::Error;
};

// Requested combination is not handled by a polynomial solver.
struct UnsupportedError : Error {
    using Error::Error;
};

} // namespace kpvcr
