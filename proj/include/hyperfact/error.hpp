#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperfact {

enum class ErrorKind {
    ParameterViolation,
    BoundaryDecayFailure,
    CutoffExceeded,
    OutOfDomain,
    RecurrenceBreakdown,
    IndexViolation,
    NotProportional,
    QuadratureFailure,
    NoConvergence,
    NonFinite,
    ContextMismatch,
    DivisibilityFailure,
    DegenerateDenominator,
    NoWeightPower,
    InadmissibleGamma,
    GridTooCoarse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code the CLI reports for an error of this kind:
/// 1 invariant/algebra failure, 2 invalid parameters, 3 inadmissible
/// deformation, 4 numerical non-convergence.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hyperfact
