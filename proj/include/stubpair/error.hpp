#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stubpair {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    NegativeProb,
    SumNotOne,
    DuplicateDegree,
    POutOfRange,
    OddDegree,
    EmptyRange,
    Unbalanced,
    TooLarge,
    Infeasible,
    OddTotal,
    OffsetOutOfWindow,
    CensoredSpan,
    Inconsistent,
    AllCensored,
    InsufficientRange,
    CutoffBeyondHorizon,
    Io,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::NegativeProb: return "NEGATIVE_PROB";
    case ErrorCode::SumNotOne: return "SUM_NOT_ONE";
    case ErrorCode::DuplicateDegree: return "DUPLICATE_DEGREE";
    case ErrorCode::POutOfRange: return "P_OUT_OF_RANGE";
    case ErrorCode::OddDegree: return "ODD_DEGREE";
    case ErrorCode::EmptyRange: return "EMPTY_RANGE";
    case ErrorCode::Unbalanced: return "UNBALANCED";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::Infeasible: return "INFEASIBLE";
    case ErrorCode::OddTotal: return "ODD_TOTAL";
    case ErrorCode::OffsetOutOfWindow: return "OFFSET_OUT_OF_WINDOW";
    case ErrorCode::CensoredSpan: return "CENSORED_SPAN";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::AllCensored: return "ALL_CENSORED";
    case ErrorCode::InsufficientRange: return "INSUFFICIENT_RANGE";
    case ErrorCode::CutoffBeyondHorizon: return "CUTOFF_BEYOND_HORIZON";
    case ErrorCode::Io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

/// Exception carrying a machine-readable code; the message is prefixed
/// with the code name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

} // namespace stubpair
