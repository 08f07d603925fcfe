#pragma once

#include <stdexcept>
#include <string>

namespace ubm {

// Base class for every failure raised by the toolkit. `numerical()` separates
// genuine numerical breakdown (CLI exit code 3) from bad input (exit code 2).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, bool numerical = false)
        : std::runtime_error(what), numerical_(numerical) {}

    bool numerical() const noexcept { return numerical_; }

private:
    bool numerical_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

struct OrderMismatch : Error {
    explicit OrderMismatch(const std::string& what) : Error("order mismatch: " + what) {}
};

struct DivisionByZeroConstantTerm : Error {
    DivisionByZeroConstantTerm() : Error("series division by a series with zero constant term") {}
};

struct NonzeroConstantTerm : Error {
    NonzeroConstantTerm() : Error("series composition requires an inner series with zero constant term") {}
};

struct QuadratureNonConvergence : Error {
    explicit QuadratureNonConvergence(const std::string& what)
        : Error("quadrature did not converge: " + what, true) {}
};

struct BracketFailure : Error {
    explicit BracketFailure(const std::string& what) : Error("root bracket failure: " + what, true) {}
};

struct TruncationNotReached : Error {
    explicit TruncationNotReached(const std::string& what)
        : Error("truncation target not reached: " + what, true) {}
};

struct StepInstability : Error {
    explicit StepInstability(const std::string& what) : Error("integration left the unit disk: " + what, true) {}
};

struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& what) : Error("grid too coarse: " + what) {}
};

} // namespace ubm
