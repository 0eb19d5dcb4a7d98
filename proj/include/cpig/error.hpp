#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpig {

enum class ErrorKind {
    Domain,
    NoDensity,
    InvalidKnots,
    EmptySample,
    Divergent,
    MaxDepth,
    UnboundedSupport,
    RatioSingularity,
    NonMonotone,
    UnsupportedModel,
    InvalidWeights,
    Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidKnotsError : public Error {
public:
    InvalidKnotsError(std::size_t index, const std::string& what)
        : Error(ErrorKind::InvalidKnots, "knot " + std::to_string(index) + ": " + what),
          index_(index) {}

    /// Index of the first knot that violates the CDF invariants.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorKind::Parse, "at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace cpig
