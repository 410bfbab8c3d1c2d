#pragma once

#include <stdexcept>
#include <string>

namespace qso6 {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in Q(i)(q)") {}
};

struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& m, std::size_t pos)
        : std::runtime_error(m + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct NotInPprime : std::invalid_argument {
    NotInPprime(int h, int i, int j)
        : std::invalid_argument("triple (" + std::to_string(h) + "," + std::to_string(i) + "," +
                                std::to_string(j) + ") is not an admissible distance triple") {}
};

struct InvalidH : std::invalid_argument {
    InvalidH() : std::invalid_argument("custom H must be a nonzero scalar") {}
};

struct CustomHMode : std::logic_error {
    explicit CustomHMode(const std::string& what_op)
        : std::logic_error(what_op + " requires canonical H mode") {}
};

struct BasisMismatch : std::invalid_argument {
    BasisMismatch() : std::invalid_argument("operators live in different bases") {}
};

struct DimMismatch : std::invalid_argument {
    DimMismatch() : std::invalid_argument("operator dimensions differ") {}
};

struct NotDiagonal : std::invalid_argument {
    NotDiagonal() : std::invalid_argument("operator is not diagonal in its basis") {}
};

struct SolutionSpaceNotOneDim : std::runtime_error {
    explicit SolutionSpaceNotOneDim(int dim)
        : std::runtime_error("intertwiner solution space has dimension " + std::to_string(dim)) {}
};

struct LambdaNotASquare : std::runtime_error {
    LambdaNotASquare() : std::runtime_error("K'^2 = lambda*I with lambda not a perfect square in Q(i)(q)") {}
};

struct MemoryBudget : std::runtime_error {
    explicit MemoryBudget(const std::string& m) : std::runtime_error(m) {}
};

struct Disconnected : std::runtime_error {
    Disconnected() : std::runtime_error("graph is not connected") {}
};

struct SelfLoop : std::runtime_error {
    SelfLoop() : std::runtime_error("graph has a self-loop") {}
};

struct NoRealFit : std::runtime_error {
    explicit NoRealFit(const std::string& m) : std::runtime_error(m) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace qso6
