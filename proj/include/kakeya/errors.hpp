#pragma once

#include <stdexcept>
#include <string>

namespace kakeya {

struct NotAPrimePower : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct WrongCharacteristic : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroLeadingCoefficient : std::domain_error {
    using std::domain_error::domain_error;
};

struct WrongFieldKind : std::domain_error {
    using std::domain_error::domain_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooLarge : std::length_error {
    using std::length_error::length_error;
};

struct LinearFunction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedField : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadK : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroPolynomial : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Retry loop of the random-rotation construction gave up; carries the best
// fraction of directions covered by any attempted union.
struct AttemptsExhausted : std::runtime_error {
    double best_coverage;
    AttemptsExhausted(const std::string& msg, double coverage)
        : std::runtime_error(msg), best_coverage(coverage) {}
};

}  // namespace kakeya
