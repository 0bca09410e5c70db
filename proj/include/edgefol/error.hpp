#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgefol {

enum class ErrorKind {
    ZeroCuspidalCurvature,
    NegativeLimitingNormalCurvature,
    NonFinite,
    MalformedJetFile,
    SamplingExhausted,
    HigherTermsPresent,
    DegenerateDiscriminant,
    DiscriminantNearZero,
    CommonRoot,
    HessianNonNegative,
    InvariantViolation,
    PropositionHypothesisViolated,
    SeedOffSurface,
    ChartBreakdown,
    EmptyPortrait,
    WindowTooSmall,
    FitIllConditioned,
    InvalidConfig,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::ZeroCuspidalCurvature: return "ZeroCuspidalCurvature";
    case ErrorKind::NegativeLimitingNormalCurvature: return "NegativeLimitingNormalCurvature";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::MalformedJetFile: return "MalformedJetFile";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::HigherTermsPresent: return "HigherTermsPresent";
    case ErrorKind::DegenerateDiscriminant: return "DegenerateDiscriminant";
    case ErrorKind::DiscriminantNearZero: return "DiscriminantNearZero";
    case ErrorKind::CommonRoot: return "CommonRoot";
    case ErrorKind::HessianNonNegative: return "HessianNonNegative";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::PropositionHypothesisViolated: return "PropositionHypothesisViolated";
    case ErrorKind::SeedOffSurface: return "SeedOffSurface";
    case ErrorKind::ChartBreakdown: return "ChartBreakdown";
    case ErrorKind::EmptyPortrait: return "EmptyPortrait";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::FitIllConditioned: return "FitIllConditioned";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace edgefol
