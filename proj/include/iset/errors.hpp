#pragma once

#include <stdexcept>
#include <string>

namespace iset {

/// Bad argument or malformed option value (CLI exit code 2).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Unknown or missing key in a benchmark config (CLI exit code 2).
struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Carries the 1-based line number (CLI exit code 3).
struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& what, int line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

/// Missing or inconsistent data, e.g. outcomes not covering the
/// independent set (CLI exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector/matrix size mismatch.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Design with no identifying variation: constant exposures, collinear
/// columns, |Corr(Z, rho)| = 1 (CLI exit code 4).
struct DegenerateDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace iset
