#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trimat {

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("matrix is singular") {}
    explicit SingularMatrix(const std::string& what) : std::domain_error(what) {}
};

struct ZeroDenominator : std::domain_error {
    ZeroDenominator() : std::domain_error("denominator is zero") {}
    explicit ZeroDenominator(const std::string& what) : std::domain_error(what) {}
};

struct UnknownSequence : std::runtime_error {
    explicit UnknownSequence(const std::string& name)
        : std::runtime_error("unknown sequence: " + name), sequence_name(name) {}
    std::string sequence_name;
};

// Thrown by the rounded Binet accessors when the numeric value is too far
// from the nearest integer to trust.
struct RoundingError : std::runtime_error {
    explicit RoundingError(const std::string& what) : std::runtime_error(what) {}
};

// Identity-text parse failure. Carries the byte offset of the offending
// character and what the parser expected there.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& expected, std::size_t position, const std::string& found)
        : std::runtime_error("parse error at position " + std::to_string(position) +
                             ": expected " + expected + ", found " + found),
          expected_(expected),
          position_(position) {}

    const std::string& expected() const noexcept { return expected_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string expected_;
    std::size_t position_;
};

}  // namespace trimat
