#pragma once

#include <stdexcept>
#include <string>

namespace iohoem {

// Malformed or inconsistent input to a library operation.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Special-function evaluation outside the representable range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Integrator or quadrature failure (step underflow, non-finite values,
// non-convergence).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration file problems; line is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace iohoem
