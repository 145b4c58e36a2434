#pragma once

#include <stdexcept>
#include <string>

namespace philos {

// Input to a pure formula violates its precondition (k <= b, s_m > k - b, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter outside the domain of a formula (calibration with P outside (0,1)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A fraction whose denominator (total trust) is zero.
class UndefinedFractionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// State machine errors.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConflictError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A simulation invariant was broken mid-run.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace philos
