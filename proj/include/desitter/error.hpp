#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace desitter {

/// Failure categories raised by the library. Each maps to a documented
/// precondition or numerical breakdown of one operation.
enum class ErrorCode {
    InvalidArgument,
    NotOnSphere,
    NotTangent,
    NotNormalized,
    DegenerateFrame,
    NotTimelike,
    NotUnitSpeed,
    GeodesicPoint,
    FrameDrift,
    NoGeodesic,
    Antipodal,
    NotOnPseudoSphere,
    ApexSingularity,
    DomainExit,
    InsufficientSamples,
    GeodesicCurve,
    ApexOnCurve,
    RegularityFailure,
    PlanarDegenerate,
    NotRectifying,
    AtPole,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotOnSphere: return "NotOnSphere";
        case ErrorCode::NotTangent: return "NotTangent";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::DegenerateFrame: return "DegenerateFrame";
        case ErrorCode::NotTimelike: return "NotTimelike";
        case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
        case ErrorCode::GeodesicPoint: return "GeodesicPoint";
        case ErrorCode::FrameDrift: return "FrameDrift";
        case ErrorCode::NoGeodesic: return "NoGeodesic";
        case ErrorCode::Antipodal: return "Antipodal";
        case ErrorCode::NotOnPseudoSphere: return "NotOnPseudoSphere";
        case ErrorCode::ApexSingularity: return "ApexSingularity";
        case ErrorCode::DomainExit: return "DomainExit";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::GeodesicCurve: return "GeodesicCurve";
        case ErrorCode::ApexOnCurve: return "ApexOnCurve";
        case ErrorCode::RegularityFailure: return "RegularityFailure";
        case ErrorCode::PlanarDegenerate: return "PlanarDegenerate";
        case ErrorCode::NotRectifying: return "NotRectifying";
        case ErrorCode::AtPole: return "AtPole";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<double> where = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), where_(where) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

    /// Parameter value at which the failure was detected, when meaningful
    /// (e.g. the arc length where a closed-form geodesic leaves its chart).
    [[nodiscard]] std::optional<double> where() const noexcept { return where_; }

private:
    ErrorCode code_;
    std::optional<double> where_;
};

} // namespace desitter
