#pragma once

#include <stdexcept>
#include <string>

namespace tcr {

/// Invalid parameters, rosters, sweep specs or config files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller broke an operation precondition (e.g. a vote from an ineligible voter).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An engine invariant (conservation, non-negativity, ...) failed at runtime.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ComputationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tcr
