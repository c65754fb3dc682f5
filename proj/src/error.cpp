#include "hyperfact/error.hpp"

namespace hyperfact {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ParameterViolation: return "ParameterViolation";
    case ErrorKind::BoundaryDecayFailure: return "BoundaryDecayFailure";
    case ErrorKind::CutoffExceeded: return "CutoffExceeded";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::RecurrenceBreakdown: return "RecurrenceBreakdown";
    case ErrorKind::IndexViolation: return "IndexViolation";
    case ErrorKind::NotProportional: return "NotProportional";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::DivisibilityFailure: return "DivisibilityFailure";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NoWeightPower: return "NoWeightPower";
    case ErrorKind::InadmissibleGamma: return "InadmissibleGamma";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ParameterViolation:
    case ErrorKind::BoundaryDecayFailure:
    case ErrorKind::CutoffExceeded:
    case ErrorKind::OutOfDomain:
    case ErrorKind::RecurrenceBreakdown:
    case ErrorKind::IndexViolation:
    case ErrorKind::DegenerateDenominator:
    case ErrorKind::NoWeightPower:
        return 2;
    case ErrorKind::InadmissibleGamma:
        return 3;
    case ErrorKind::QuadratureFailure:
    case ErrorKind::NoConvergence:
    case ErrorKind::NonFinite:
    case ErrorKind::GridTooCoarse:
        return 4;
    case ErrorKind::NotProportional:
    case ErrorKind::ContextMismatch:
    case ErrorKind::DivisibilityFailure:
        return 1;
    }
    return 1;
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace hyperfact
