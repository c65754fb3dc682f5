#pragma once

#include <utility>

#include "hyperfact/family.hpp"
#include "hyperfact/polyfun.hpp"
#include "hyperfact/riccati.hpp"

namespace hyperfact {

/// x ↦ s(x) with ds/dx = sign·κ(s(x)):
///   σ=1: s=x on ℝ; σ=s: s=x²/4 on (0,∞); σ=1−s²: s=cos x on (0,π), sign −;
///   σ=s²−1: s=cosh x on (0,∞); σ=s²: s=eˣ on ℝ; σ=s²+1: s=sinh x on ℝ.
class CoordinateMap {
public:
    explicit CoordinateMap(Kind kind);

    Kind kind() const { return kind_; }
    Interval x_domain() const { return domain_; }
    int sign() const { return sign_; }
    bool contains(double x) const { return domain_.contains(x); }

    double s_of_x(double x) const;
    double x_of_s(double s) const;
    double ds_dx(double x) const;
    /// s(x) with its endpoint gaps computed without cancellation.
    Locus locus(const Family& f, double x) const;

private:
    Kind kind_;
    Interval domain_;
    int sign_;
};

/// √(κρ) at s, from a Locus (finite where κρ underflows only through exp).
double log_sqrt_kappa_rho(const Family& f, const Locus& p);

/// Ψ_{ℓ,m}(x) = √(κρ) Φ_{ℓ,m}(s(x)), m ≤ ℓ < Λ.
double wavefunction(const Family& f, int l, int m, double x);
/// Ψ_{ℓ,m} and dΨ/dx.
DifferentiableValue wavefunction_dx(const Family& f, int l, int m, double x);

/// W_{m,γ}(x) = −τ/(2κ) − (m−½)κ' + κD at s = s(x).
double superpotential(const Deformation& d, double x);
/// W̃_{m,γ} = W_{m,γ} + δ/(2m+2k+1); requires δ.
double superpotential_tilde(const Deformation& d, double x);
/// W̃ when the deformation carries δ, W otherwise, with dW/dx.
DifferentiableValue superpotential_dx(const Deformation& d, double x);

struct PotentialPair {
    double upper;    // V_{m+1}(x) or Ṽ_{m+1}(x)
    double partner;  // V_{m,γ}(x) or Ṽ_{m,γ}(x)
};

/// W² ± W' + λ_m and W² ∓ W' + λ_m (the sign is the map's); with δ the tilde
/// pair from W̃ and λ̃_m.
PotentialPair potentials(const Deformation& d, double x);

enum class BSide { B, B_plus };

/// B = ±d/dx + W, B⁺ = ∓d/dx + W on a function of x (W̃ with δ).
double B_apply(const Deformation& d, double x, const DifferentiableValue& psi, BSide which);

/// B⁺Ψ_{ℓ,m+1}(x) = √(κρ)·(partner eigenfunction)(s(x)), value and d/dx.
DifferentiableValue partner_wavefunction_dx(const Deformation& d, const PartnerEigenfunction& u, double x);

/// The Schrödinger-form objects of one deformation.
class SchrodingerObjects {
public:
    explicit SchrodingerObjects(Deformation d) : d_(std::move(d)), map_(d_.family().kind()) {}

    const Deformation& deformation() const { return d_; }
    const CoordinateMap& map() const { return map_; }
    double W(double x) const { return superpotential_dx(d_, x).value; }
    double V_upper(double x) const { return potentials(d_, x).upper; }
    double V_partner(double x) const { return potentials(d_, x).partner; }
    double Psi(int l, int m, double x) const { return wavefunction(d_.family(), l, m, x); }

private:
    Deformation d_;
    CoordinateMap map_;
};

}  // namespace hyperfact
