#pragma once

#include <stdexcept>
#include <string>

namespace wedgecalc {

// Base of all library errors.
struct CalcError : std::runtime_error {
    explicit CalcError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (element or map expressions).  Carries location info.
struct ParseError : CalcError {
    int line = 1;
    int column = 1;
    std::string expected;

    ParseError(const std::string& msg, int ln, int col, std::string exp = "")
        : CalcError(msg + " at " + std::to_string(ln) + ":" + std::to_string(col) +
                    (exp.empty() ? "" : " (expected " + exp + ")")),
          line(ln), column(col), expected(std::move(exp)) {}
};

// A stated precondition fails: non-unimodular matrix, mismatched shapes,
// element outside the expected sublattice.
struct PreconditionError : CalcError {
    using CalcError::CalcError;
};

// Degree / shape combination the calculus does not model.
struct UnsupportedError : CalcError {
    using CalcError::CalcError;
};

// A computation needs a datum (Hopf invariant, order) that was declared unknown.
struct MissingDataError : CalcError {
    using CalcError::CalcError;
};

// Search budget exhausted without a verdict.
struct BudgetExhausted : CalcError {
    using CalcError::CalcError;
};

} // namespace wedgecalc
