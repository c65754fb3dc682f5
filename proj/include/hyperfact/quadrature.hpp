#pragma once

#include <functional>

namespace hyperfact {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    /// Number of integrand evaluations.
    int panels = 0;
    int level = 0;
};

using Integrand = std::function<double(double)>;

inline constexpr int quad_max_level = 12;

/// Double-exponential quadrature on the open interval (a, b): tanh-sinh for
/// finite ends, exp-sinh for a half line and sinh-sinh for the whole line.
/// The step halves per level until two successive levels agree to
/// `tol · ∫|f|`. Integrable endpoint singularities are fine because the
/// integrand is never sampled at an endpoint.
///
/// Throws NoConvergence past level 12 and NonFinite on a NaN or infinite
/// sample. Reversed limits give the negated integral.
QuadratureResult quad(const Integrand& f, double a, double b, double tol = 1e-12);

struct TailLimit {
    bool finite = true;
    /// The integral; +inf when divergent.
    double value = 0.0;
};

/// ∫_0^{length} F(g) dg for a nonnegative F whose only possible trouble sits
/// at g = 0 (finite `length`) or at g = ∞ (infinite `length`). Partial
/// integrals over decades of g approaching that end give increments whose
/// ratio extrapolates the remaining tail; a ratio ≥ 1 or a disagreement with
/// the direct quadrature is reported as divergence.
TailLimit tail_limit(const Integrand& F, double length, double tol = 1e-12);

}  // namespace hyperfact
