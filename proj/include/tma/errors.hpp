#pragma once

#include <stdexcept>
#include <string>

namespace tma {

/// Malformed or inconsistent input: bad document fields, unknown references,
/// schedules that do not cover the instance.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid solver or model configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No feasible schedule could be produced (over-constrained instance,
/// exhausted retry caps, oversize oracle request).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tma
