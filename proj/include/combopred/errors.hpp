#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace combopred {

// Base for all library errors. `category()` is a stable machine-readable
// tag ("parse", "invariant", "infeasible") used by the CLI for exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& what)
        : std::runtime_error(what), category_(std::move(category)) {}
    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse", what) {}
};

class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error("invariant", what) {}
};

class EmptySample : public Error {
public:
    explicit EmptySample(const std::string& what) : Error("invariant", what) {}
};

class GridMismatch : public Error {
public:
    explicit GridMismatch(const std::string& what) : Error("invariant", what) {}
};

class OutOfRange : public Error {
public:
    explicit OutOfRange(const std::string& what) : Error("invariant", what) {}
};

// A correlation parameter implies a joint cell probability outside [0,1].
class InfeasibleCorrelation : public Error {
public:
    explicit InfeasibleCorrelation(const std::string& what) : Error("infeasible", what) {}
};

class NoResponders : public Error {
public:
    explicit NoResponders(const std::string& what) : Error("infeasible", what) {}
};

class DegenerateMargin : public Error {
public:
    explicit DegenerateMargin(const std::string& what) : Error("infeasible", what) {}
};

class NoFeasibleSolution : public Error {
public:
    explicit NoFeasibleSolution(const std::string& what) : Error("infeasible", what) {}
};

} // namespace combopred
