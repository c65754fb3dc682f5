#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hyperfact/family.hpp"
#include "hyperfact/kfunction.hpp"
#include "hyperfact/polyfun.hpp"

namespace hyperfact {

/// Admissible deformation parameters are kept this far from a ray endpoint.
inline constexpr double gamma_margin = 1e-9;

/// γ + I(s) ≠ 0 on (a,b) iff γ ≥ −I(a⁺) or γ ≤ −I(b⁻); I(a⁺) ≤ 0 ≤ I(b⁻) may
/// be infinite, which empties the corresponding ray.
struct GammaRays {
    double lower_limit;  // I(a⁺)
    double upper_limit;  // I(b⁻)

    bool has_upper_ray() const { return std::isfinite(lower_limit); }
    bool has_lower_ray() const { return std::isfinite(upper_limit); }
    /// γ = +inf (no deformation) is always admissible.
    bool admits(double gamma) const;
    /// e.g. "γ > 0.8862 or γ < -0.8862"
    std::string describe() const;
};

/// Which combination the shifted partner uses when δ is present.
///   printed: b̃ = κ(d/ds + φ_γ) + c with the plain deformation term.
///   isospectral: the deformation term solves the shifted Riccati equation
///     (weight σ^mρ e^{−2cX}); it agrees with `printed` when γ = ∞.
enum class TildeForm { printed, isospectral };

/// The deformation parameters (m, γ, s₀, optional δ) of a Mielnik partner.
class Deformation {
public:
    /// Validates m+1 < Λ, s₀ ∈ (a,b), the shift denominator when δ is given and
    /// admissibility of γ (InadmissibleGamma names the admissible rays).
    static Deformation make(const Family& f, int m, double gamma, std::optional<double> s0 = std::nullopt,
                            std::optional<Rational> delta = std::nullopt, TildeForm form = TildeForm::printed);

    const Family& family() const { return family_; }
    int m() const { return m_; }
    double gamma() const { return gamma_; }
    double s0() const { return s0_; }
    const std::optional<Rational>& delta() const { return delta_; }
    TildeForm tilde_form() const { return form_; }
    bool undeformed() const { return std::isinf(gamma_); }
    const GammaRays& rays() const { return rays_; }

    /// c = δ/(2m+2k+1), or 0 without δ.
    double shift() const { return shift_; }
    double lambda_m() const { return lambda_m_; }
    /// λ̃_m with δ, λ_m otherwise.
    double lambda_m_shifted() const { return lambda_tilde_; }

    /// log G with G = σ^mρ (times e^{−2cX} in the isospectral shifted form).
    double log_density(const Locus& p) const;
    /// G'/G
    double log_density_derivative(double s) const;
    /// ∫_{s₀}^{s} G
    double integral(double s) const;
    /// D = G/(γ + ∫_{s₀}^{s} G) and D' = D·G'/G − D²; both 0 for γ = ∞.
    DifferentiableValue deformation_term(double s) const;

private:
    Deformation(const Family& f) : family_(f) {}

    Family family_;
    int m_ = 0;
    double gamma_ = INFINITY;
    double s0_ = 0.0;
    std::optional<Rational> delta_;
    TildeForm form_ = TildeForm::printed;
    double shift_ = 0.0;
    double density_rate_ = 0.0;
    double lambda_m_ = 0.0;
    double lambda_tilde_ = 0.0;
    GammaRays rays_{};
};

/// I_m(s) = ∫_{s₀}^{s} σ^m ρ with the family's base point s₀.
double cumulative_weight(const Family& f, int m, double s);
double cumulative_weight(const Family& f, int m, double s, double s0);

GammaRays admissible_gamma_range(const Family& f, int m);
GammaRays admissible_gamma_range(const Family& f, int m, double s0);

/// ψ_γ = −τ/σ − (m−1)σ'/(2σ) + D
DifferentiableValue psi_gamma(const Deformation& d, double s);
/// φ_γ = −mσ'/(2σ) + D
DifferentiableValue phi_gamma(const Deformation& d, double s);

/// Largest residual, relative to the largest term (floored at 1), of
/// ψ' + ψ² + (τ/σ)ψ − (v_{m+1} − λ_m)/σ over the points. In the isospectral
/// shifted form the shifted equation is checked for ψ_γ + c/κ, with
/// v_{m+1} − δκ' and λ̃_m.
double check_riccati(const Deformation& d, const std::vector<double>& points);

/// Residual of the factorization H̃_{m+1} − λ̃_m = b̃ b̃^+ in its zeroth-order
/// coefficient (the plain one without δ). Zero except for the printed shifted
/// form at finite γ, where it equals 2cκD.
double factorization_defect(const Deformation& d, double s);

/// σφ − σψ + κκ' − τ, which vanishes identically.
double first_order_defect(const Deformation& d, double s);

enum class BOperator { b, b_plus };

/// b f = κ(f' + φ_γ f), b^+ f = κ(−f' + ψ_γ f)
double b_apply(const Deformation& d, double s, const DifferentiableValue& fval, BOperator which);
/// The shifted versions b̃ = b + c, b̃^+ = b^+ + c.
double tilde_b_apply(const Deformation& d, double s, const DifferentiableValue& fval, BOperator which);

/// Zeroth-order coefficient of H_{m,γ} = b^+ b + λ_m = −σD² − τD + v_{m,γ}:
/// v_{m,γ} = σψφ − σφ' − (σ'/2)φ + λ_m.
double partner_potential_v(const Deformation& d, double s);
/// Zeroth-order coefficient of H̃_{m,γ} = b̃^+ b̃ + λ̃_m: v_{m,γ} + cκ(ψ_γ + φ_γ).
double tilde_partner_v(const Deformation& d, double s);
/// v_{m+1} − δκ' (plain v_{m+1} without δ): the operator being partnered.
double upper_v(const Deformation& d, double s);

/// s ↦ b^+ Φ_{ℓ,m+1} (or b̃^+ applied to the eigenfunction of H̃_{m+1} at
/// λ̃_ℓ when the deformation carries δ), with value and analytic derivative.
class PartnerEigenfunction {
public:
    DifferentiableValue operator()(double s) const;
    int level() const { return level_; }
    /// λ_ℓ, or λ̃_ℓ with δ.
    double eigenvalue() const { return eigenvalue_; }
    /// The function b^+ acts on, with its first two derivatives.
    DifferentiableValue upper(double s) const;

private:
    friend PartnerEigenfunction partner_eigenfunction(const Deformation& d, int l);
    PartnerEigenfunction(const Deformation& d, int l, KFunction<double> f);

    Deformation d_;
    int level_;
    double eigenvalue_;
    KFunction<double> f_, f1_, f2_;
};

/// Requires m < ℓ < Λ.
PartnerEigenfunction partner_eigenfunction(const Deformation& d, int l);

/// Eigenfunction of H̃_{order} − applied as H_{order} − δκ' − at λ̃_j for
/// j ≥ order: ã^+_{order}…ã^+_{j−1} κ^j e^{−c_j X}, c_i = δ/(2i+2k+1), each
/// step divided by λ̃_j − λ̃_i (when nonzero) so that δ = 0 gives Φ_{j,order}.
template <class T>
KFunction<T> tilde_eigenfunction(const Family& f, int order, int j, const Rational& delta);

extern template KFunction<Rational> tilde_eigenfunction<Rational>(const Family&, int, int, const Rational&);
extern template KFunction<double> tilde_eigenfunction<double>(const Family&, int, int, const Rational&);

}  // namespace hyperfact
