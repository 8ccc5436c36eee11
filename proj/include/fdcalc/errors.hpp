#pragma once

#include <stdexcept>
#include <string>

namespace fdcalc {

// Base for all library errors. Everything a caller can provoke maps to one of
// the concrete types below; the CLI turns any of them into exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gamma-ratio numerator hits a pole while the denominator does not: the value
// is genuinely infinite.
struct PoleError : Error {
    using Error::Error;
};

// The exact backend was asked for a value that is not a rational number.
struct ExactnessError : Error {
    using Error::Error;
};

// A precondition on real-valued arguments is violated (range, lattice
// membership of t, integrality of a base, ...).
struct DomainError : Error {
    using Error::Error;
};

struct OffGrid : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct EmptyDomain : Error {
    using Error::Error;
};

// Grid has too few points for the requested operator order.
struct TooShort : Error {
    using Error::Error;
};

// Exact and float values mixed in one computation.
struct BackendMismatch : Error {
    using Error::Error;
};

// Integer shift p is incompatible with the fractional order (p >= mu).
struct OrderError : Error {
    using Error::Error;
};

// A theorem's vanishing-initial-difference hypothesis fails on the input.
struct HypothesisViolated : Error {
    using Error::Error;
};

// gamma, delta are not conjugate exponents (1/gamma + 1/delta != 1).
struct HolderError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

// A weight function is nonpositive somewhere on its window.
struct WeightError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fdcalc
