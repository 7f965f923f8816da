#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace milnor {

enum class ErrorCode {
    // graph input
    LoopEdge,
    Disconnected,
    NegativeGenus,
    NonContiguousIds,
    ParseError,
    // exact lattice work
    NotNegativeDefinite,
    IterationCapExceeded,
    BoundTooSmall,
    DimensionMismatch,
    NonIntegralSolution,
    NonEffectiveSolution,
    AllZero,
    NotMilnorFillable,
    // polynomials and numerics
    SyntaxError,
    UnknownVariable,
    SamplingFailed,
    DegenerateTangent,
    SingularMetric,
    ZeroGradient,
    OnBinding,
    ConeViolation,
    InvalidMesh,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::LoopEdge: return "LoopEdge";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::NegativeGenus: return "NegativeGenus";
        case ErrorCode::NonContiguousIds: return "NonContiguousIds";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotNegativeDefinite: return "NotNegativeDefinite";
        case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
        case ErrorCode::BoundTooSmall: return "BoundTooSmall";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonIntegralSolution: return "NonIntegralSolution";
        case ErrorCode::NonEffectiveSolution: return "NonEffectiveSolution";
        case ErrorCode::AllZero: return "AllZero";
        case ErrorCode::NotMilnorFillable: return "NotMilnorFillable";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::SamplingFailed: return "SamplingFailed";
        case ErrorCode::DegenerateTangent: return "DegenerateTangent";
        case ErrorCode::SingularMetric: return "SingularMetric";
        case ErrorCode::ZeroGradient: return "ZeroGradient";
        case ErrorCode::OnBinding: return "OnBinding";
        case ErrorCode::ConeViolation: return "ConeViolation";
        case ErrorCode::InvalidMesh: return "InvalidMesh";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending vertex, edge, entry or text position.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace milnor
