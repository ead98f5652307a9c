#pragma once

#include <stdexcept>
#include <string>

namespace sfcsim {

// Base for all sfcsim exceptions. Thrown only for caller bugs and bad input
// (unknown ids, malformed config, duplicate definitions). Constraint failures
// during provisioning are reported as values, not exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class StateError : public Error {
public:
    using Error::Error;
};

// Raised by the exhaustive planner when the search space is too large to
// enumerate; callers are expected to fall back to a heuristic.
class EnumerationError : public Error {
public:
    using Error::Error;
};

// A provisioning mutation was refused by one of its admission guards. The
// state is untouched when one of these is thrown. Simulation code that wants
// refusal-as-data should use the peek_* twins instead of catching these.
class GuardError : public Error {
public:
    using Error::Error;
};

class InsufficientClusterCpu : public GuardError {
public:
    using GuardError::GuardError;
};

class KindMismatch : public GuardError {
public:
    using GuardError::GuardError;
};

class AlreadyMapped : public GuardError {
public:
    using GuardError::GuardError;
};

class InsufficientInstanceHeadroom : public GuardError {
public:
    using GuardError::GuardError;
};

class UnroutableVirtualLink : public GuardError {
public:
    using GuardError::GuardError;
};

class DelayBoundExceeded : public GuardError {
public:
    using GuardError::GuardError;
};

class InstanceBusy : public GuardError {
public:
    using GuardError::GuardError;
};

// Asked a fully-mapped-only question about a request with unmapped positions.
class RequestNotFullyMapped : public StateError {
public:
    using StateError::StateError;
};

// The greedy planner found no feasible way to provision a request.
class Infeasible : public Error {
public:
    using Error::Error;
};

}  // namespace sfcsim
