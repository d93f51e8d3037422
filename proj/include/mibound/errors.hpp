#pragma once

#include <stdexcept>
#include <string>

namespace mibound {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A probability entry is negative.
struct NegativeEntryError : Error {
    int row;
    int col;
    NegativeEntryError(int r, int c, double value)
        : Error("negative entry " + std::to_string(value) + " at (" + std::to_string(r) +
                "," + std::to_string(c) + ")"),
          row(r), col(c) {}
};

// Total probability mass differs from 1 beyond tolerance (strict validation).
struct MassMismatchError : Error {
    double sum;
    explicit MassMismatchError(double s)
        : Error("probability mass " + std::to_string(s) + " is not 1 within tolerance"),
          sum(s) {}
};

// All entries are zero, so the matrix cannot be renormalized.
struct ZeroMassError : Error {
    ZeroMassError() : Error("matrix has zero total mass") {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

// The constrained minimization has an empty feasible set.
struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

// Brute-force search rejected a problem too large for exhaustive enumeration.
struct DimensionGuardError : Error {
    int my;
    explicit DimensionGuardError(int my_)
        : Error("brute-force oracle supports my <= 3, got my = " + std::to_string(my_)),
          my(my_) {}
};

// A counts table sums to zero.
struct ZeroTotalError : Error {
    ZeroTotalError() : Error("counts table has zero total count") {}
};

// Malformed input text (JSON joint distribution or counts file).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace mibound
