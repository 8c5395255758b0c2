#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acemd {

/// Error classes raised by the library. The CLI maps each one onto a
/// distinct process exit code, so the numeric values are stable.
enum class Errc : int {
    InvalidArgument = 10,
    NonUniformSampling = 11,
    NonFiniteValue = 12,
    TooShort = 13,
    NonPositivePrice = 14,
    InsufficientExtrema = 20,
    DegenerateSeries = 21,
    TooFewModes = 22,
    ModeCountMismatch = 23,
    IndexOutOfRange = 30,
    InsufficientConditionalSamples = 31,
    EmptyInput = 32,
    NoModes = 40,
    InsufficientValidSamples = 41,
    DegenerateFit = 42,
    ParseError = 50,
    DuplicateDate = 51,
    DateRangeMismatch = 52,
    IoError = 53,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace acemd
