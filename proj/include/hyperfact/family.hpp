#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string_view>

#include "hyperfact/poly.hpp"
#include "hyperfact/rational.hpp"

namespace hyperfact {

/// The six canonical choices of σ. τ(s) = αs + β in every case.
enum class Kind {
    constant,      // σ = 1
    linear,        // σ = s
    one_minus_s2,  // σ = 1 − s²
    s2_minus_one,  // σ = s² − 1
    s2,            // σ = s²
    s2_plus_one,   // σ = s² + 1
};

inline constexpr std::array<Kind, 6> all_kinds{Kind::constant, Kind::linear, Kind::one_minus_s2,
                                               Kind::s2_minus_one, Kind::s2, Kind::s2_plus_one};

/// JSON tag: "const", "linear", "one_minus_s2", "s2_minus_one", "s2", "s2_plus_one".
std::string_view tag(Kind kind) noexcept;
Kind kind_from_tag(std::string_view tag);
/// Human-readable σ, e.g. "1-s^2".
std::string_view sigma_label(Kind kind) noexcept;
/// The parameter constraint that makes (a,b) exist, e.g. "alpha < beta < -alpha".
std::string_view constraint_label(Kind kind) noexcept;

struct Interval {
    double lower;
    double upper;

    bool contains(double s) const { return s > lower && s < upper; }
};

/// A point of (a,b) together with its distances to both endpoints (infinite
/// for an infinite end). Factors singular at a finite endpoint are evaluated
/// from these distances, which stay exact arbitrarily close to the endpoint.
struct Locus {
    double s;
    double to_lower;
    double to_upper;
};

/// A hypergeometric-type operator family σ y'' + τ y' + λ y = 0 with fixed
/// (σ, α, β). Immutable; obtain validated instances through make_family.
class Family {
public:
    /// No validation at all; for evaluating closed forms on arbitrary parameters.
    static Family unchecked(Kind kind, const Rational& alpha, const Rational& beta);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const Rational& alpha_exact() const { return alpha_q_; }
    const Rational& beta_exact() const { return beta_q_; }
    Interval interval() const { return interval_; }

    /// False for the weight-power subfamilies admitted only through the ρ = σ^k
    /// table (σ = s with α = 0; σ = s² − 1 or s² with β = 0). Those need not
    /// satisfy the boundary condition σρ → 0 at both ends.
    bool satisfies_table1() const { return table1_; }

    bool contains(double s) const { return interval_.contains(s); }

    friend bool operator==(const Family& a, const Family& b) {
        return a.kind_ == b.kind_ && a.alpha_q_ == b.alpha_q_ && a.beta_q_ == b.beta_q_;
    }

    /// σ(s) = σ0 + σ1 s + σ2 s²; τ(s) = τ0 + τ1 s.
    const std::array<Rational, 3>& sigma_coeffs() const { return sigma_; }
    std::array<Rational, 2> tau_coeffs() const { return {beta_q_, alpha_q_}; }

    template <class T>
    Poly<T> sigma_poly() const {
        return Poly<T>(std::vector<T>{CoeffTraits<T>::from(sigma_[0]), CoeffTraits<T>::from(sigma_[1]),
                                      CoeffTraits<T>::from(sigma_[2])});
    }
    template <class T>
    Poly<T> tau_poly() const {
        return Poly<T>(std::vector<T>{CoeffTraits<T>::from(beta_q_), CoeffTraits<T>::from(alpha_q_)});
    }
    /// κ = √σ as a polynomial when σ is a perfect square on (a,b): σ = 1 and σ = s².
    template <class T>
    std::optional<Poly<T>> kappa_poly() const {
        if (kind_ == Kind::constant) return Poly<T>::constant(T(1));
        if (kind_ == Kind::s2) return Poly<T>::monomial(1);
        return std::nullopt;
    }

    double sigma(double s) const { return sd_[0] + s * (sd_[1] + s * sd_[2]); }
    double dsigma(double s) const { return sd_[1] + 2.0 * sd_[2] * s; }
    double d2sigma() const { return 2.0 * sd_[2]; }
    double tau(double s) const { return alpha_ * s + beta_; }
    double dtau() const { return alpha_; }

    double kappa(double s) const;
    /// κ' = σ'/(2κ)
    double dkappa(double s) const;
    /// κ'' = σ''/(2κ) − σ'²/(4κ³)
    double d2kappa(double s) const;
    /// X(s) = ∫ ds/κ in closed form: s, 2√s, arcsin s, arccosh s, log s, arcsinh s.
    double kappa_primitive(double s) const;

    /// Closed-form weight ρ(s); throws OutOfDomain outside (a,b).
    double weight(double s) const;
    /// log ρ(s), finite wherever ρ underflows or overflows.
    double log_weight(double s) const;
    double log_weight(const Locus& p) const;
    double log_sigma(const Locus& p) const;
    /// log(σ^m(s) ρ(s))
    double log_weighted_sigma_power(int m, double s) const;
    double log_weighted_sigma_power(int m, const Locus& p) const;

    Locus at(double s) const;
    /// s = a + gap and s = b − gap with the gap kept exact (finite ends only).
    Locus near_lower(double gap) const;
    Locus near_upper(double gap) const;

    /// Interior point used as the lower limit of ∫^s σ^m ρ: 0 on (−∞,∞) and
    /// (−1,1), 1 on (0,∞), 2 on (1,∞).
    double base_point() const;

    /// Representative interior sample of `count` points (log-spaced toward
    /// each endpoint), used by validation and property checks.
    std::vector<double> sample_points(int count) const;

private:
    Family(Kind kind, const Rational& alpha, const Rational& beta);

    Kind kind_;
    Rational alpha_q_;
    Rational beta_q_;
    double alpha_;
    double beta_;
    std::array<Rational, 3> sigma_;
    std::array<double, 3> sd_;
    Interval interval_;
    bool table1_ = true;

    friend Family make_family(Kind, const Rational&, const Rational&);
};

/// Validates the parameter constraints for (a,b), positivity of σ and ρ on
/// the interval and decay of σρ at both endpoints.
Family make_family(Kind kind, const Rational& alpha, const Rational& beta);
Family make_family(Kind kind, double alpha, double beta);

/// Extended real Λ: infinite for σ ∈ {1, s, 1−s²}, (1−α)/2 otherwise.
class Cutoff {
public:
    static Cutoff infinite() { return Cutoff(true, Rational(0)); }
    static Cutoff finite(const Rational& value) { return Cutoff(false, value); }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const { return value_; }
    double as_double() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d(); }
    /// ℓ < Λ, evaluated exactly.
    bool admits(int l) const { return infinite_ || Rational(l) < value_; }

private:
    Cutoff(bool inf, const Rational& v) : infinite_(inf), value_(v) {}
    bool infinite_;
    Rational value_;
};

Cutoff cutoff(const Family& f);

/// λ_ℓ = −(σ''/2) ℓ(ℓ−1) − τ' ℓ. Throws CutoffExceeded when ℓ ≥ Λ.
double eigenvalue(const Family& f, int l);
Rational eigenvalue_exact(const Family& f, int l);
/// The same formula without the cutoff check (needed for λ_{m−1} bookkeeping
/// and for Table 2 subfamilies).
Rational eigenvalue_formula(const Family& f, int l);

/// v_m(s) = m(m−2)/4·σ'²/σ + mτσ'/(2σ) − m(m−2)σ''/2 − mτ'
double v_m(const Family& f, int m, double s);

/// k with ρ = σ^k when (σ, α, β) matches a row of the weight-power table.
std::optional<Rational> weight_power_k(const Family& f);

/// 2m+2k+1; throws NoWeightPower or DegenerateDenominator.
Rational tilde_denominator(const Family& f, int m);
/// δ/(2m+2k+1), the additive constant of the shifted ladder operators.
double tilde_shift(const Family& f, int m, double delta);
/// λ̃_m = λ_m − δ²/(2m+2k+1)²
double tilde_eigenvalue(const Family& f, int m, double delta);
Rational tilde_eigenvalue_exact(const Family& f, int m, const Rational& delta);

}  // namespace hyperfact
