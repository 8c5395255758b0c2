#include "acemd/error.hpp"

namespace acemd {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NonUniformSampling: return "NonUniformSampling";
        case Errc::NonFiniteValue: return "NonFiniteValue";
        case Errc::TooShort: return "TooShort";
        case Errc::NonPositivePrice: return "NonPositivePrice";
        case Errc::InsufficientExtrema: return "InsufficientExtrema";
        case Errc::DegenerateSeries: return "DegenerateSeries";
        case Errc::TooFewModes: return "TooFewModes";
        case Errc::ModeCountMismatch: return "ModeCountMismatch";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::InsufficientConditionalSamples: return "InsufficientConditionalSamples";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::NoModes: return "NoModes";
        case Errc::InsufficientValidSamples: return "InsufficientValidSamples";
        case Errc::DegenerateFit: return "DegenerateFit";
        case Errc::ParseError: return "ParseError";
        case Errc::DuplicateDate: return "DuplicateDate";
        case Errc::DateRangeMismatch: return "DateRangeMismatch";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace acemd
