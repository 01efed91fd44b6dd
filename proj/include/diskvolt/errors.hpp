#pragma once

#include <stdexcept>
#include <string>

namespace diskvolt {

// Evaluation hit a point where a closed-form denominator vanishes.
// Only reachable on the boundary circle when the kernel base has |a| = 1.
struct PoleOnPath : std::runtime_error {
    explicit PoleOnPath(const std::string& what) : std::runtime_error(what) {}
};

// A series truncation was requested beyond the configured hard maximum.
struct TruncationOverflow : std::runtime_error {
    explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

// Parameter tuple violates a hypothesis of the criterion being evaluated
// (e.g. the boundedness/compactness checks require 0 < p < q).
struct HypothesisViolation : std::invalid_argument {
    explicit HypothesisViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed symbol string.
struct SymbolParseError : std::invalid_argument {
    explicit SymbolParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what), position(pos) {}
    std::size_t position;
};

}  // namespace diskvolt
