#include "odecond/error.hpp"

namespace odecond {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonSquare: return "NonSquare";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::EigenFailure: return "EigenFailure";
        case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
        case ErrorCode::AmbiguousGrouping: return "AmbiguousGrouping";
        case ErrorCode::UnsupportedSpectrum: return "UnsupportedSpectrum";
        case ErrorCode::ZeroProjection: return "ZeroProjection";
        case ErrorCode::UnsupportedNorm: return "UnsupportedNorm";
        case ErrorCode::DegenerateConstant: return "DegenerateConstant";
        case ErrorCode::NotMultipleOfPi: return "NotMultipleOfPi";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace odecond
