#pragma once

#include <stdexcept>
#include <string>

namespace extremal {

// Exit-code mapping used by the CLI:
//   ParseError -> 2, PreconditionError (and subclasses) -> 3, InternalInvariantViolation -> 4.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// caller handed us parameters outside the supported range
struct InfeasibleParameters : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DomainError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotDominating : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct HostDisconnected : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct EdgeNotInHost : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct MalformedPartition : PreconditionError {
    using PreconditionError::PreconditionError;
};

// instance too large for an exhaustive routine's budget
struct TooLarge : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct NotFound : PreconditionError {
    using PreconditionError::PreconditionError;
};

// guaranteed-to-pack precondition does not hold; caller may still attempt a best-effort run
struct PackingInfeasibleHint : PreconditionError {
    using PreconditionError::PreconditionError;
};

// a progress/correctness invariant the algorithms promise was observed to fail
struct InternalInvariantViolation : Error {
    using Error::Error;
};

inline void invariant(bool ok, const std::string& what) {
    if (!ok) throw InternalInvariantViolation(what);
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

} // namespace extremal
