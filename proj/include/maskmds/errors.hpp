#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maskmds {

/// Raised for malformed or inconsistent input data (bad JSONL lines,
/// duplicate ids, mismatched cluster sets, degenerate clusters).
/// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Power iteration failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual, std::size_t iterations)
        : std::runtime_error(what), residual(last_residual), iterations(iterations) {}

    double residual;
    std::size_t iterations;
};

}  // namespace maskmds
