#pragma once

#include <stdexcept>
#include <string>

namespace graphext {

// Base of everything this library throws deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (graph, extension, matrix or vector syntax).
struct ParseError : Error {
    using Error::Error;
    ParseError(std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg) {}
};

// A stated precondition on the mathematical input fails (sinks present,
// Condition (L) violated, base graph unsuitable).  The message names the
// hypothesis that broke.
struct HypothesisViolated : Error {
    using Error::Error;
};

// Structurally incompatible arguments: dimension mismatches, vectors over the
// wrong graph, elements of different cokernel presentations, different base
// graphs.
struct MismatchError : Error {
    using Error::Error;
};

// Argument values outside an operation's domain (negative multiplicities,
// unknown vertex ids, indices out of range).
struct DomainError : Error {
    using Error::Error;
};

// A certificate that is supposed to hold by construction failed its runtime
// verification.  This is never user error; it means an algorithm here is
// wrong, so we fail loudly instead of returning a bogus witness.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace graphext
