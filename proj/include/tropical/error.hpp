#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropical {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    ZeroVector,
    NotAFace,
    FanInvalid,
    SupportMismatch,
    NotComplete,
    NotRefinement,
    Unbalanced,
    WrongCodimension,
    ContinuityViolation,
    NonIntegral,
    NotPiecewiseLinear,
    ImageNotSupported,
    CellNotFound,
    NoChart,
    Parse,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ZeroVector: return "ZERO_VECTOR";
    case ErrorCode::NotAFace: return "NOT_A_FACE";
    case ErrorCode::FanInvalid: return "FAN_INVALID";
    case ErrorCode::SupportMismatch: return "SUPPORT_MISMATCH";
    case ErrorCode::NotComplete: return "NOT_COMPLETE";
    case ErrorCode::NotRefinement: return "NOT_REFINEMENT";
    case ErrorCode::Unbalanced: return "UNBALANCED";
    case ErrorCode::WrongCodimension: return "WRONG_CODIMENSION";
    case ErrorCode::ContinuityViolation: return "CONTINUITY_VIOLATION";
    case ErrorCode::NonIntegral: return "NON_INTEGRAL";
    case ErrorCode::NotPiecewiseLinear: return "NOT_PIECEWISE_LINEAR";
    case ErrorCode::ImageNotSupported: return "IMAGE_NOT_SUPPORTED";
    case ErrorCode::CellNotFound: return "CELL_NOT_FOUND";
    case ErrorCode::NoChart: return "NO_CHART";
    case ErrorCode::Parse: return "PARSE_ERROR";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tropical
