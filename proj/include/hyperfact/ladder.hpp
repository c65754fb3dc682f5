#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperfact/error.hpp"
#include "hyperfact/family.hpp"
#include "hyperfact/kfunction.hpp"
#include "hyperfact/polyfun.hpp"

namespace hyperfact {

/// Family and order index m the ladder operators a_m, a_m^+ act at, plus the
/// optional additive shift δ/(2m+2k+1) available when ρ = σ^k.
class LadderContext {
public:
    /// Requires m+1 < Λ.
    static LadderContext make(const Family& f, int m);
    /// Also requires ρ = σ^k and 2m+2k+1 ≠ 0.
    static LadderContext make_tilde(const Family& f, int m, const Rational& delta);

    const Family& family() const { return family_; }
    int m() const { return m_; }
    bool has_tilde() const { return shift_.has_value(); }
    const Rational& k() const { return *k_; }
    const Rational& delta() const { return delta_; }
    /// δ/(2m+2k+1); zero without the tilde shift.
    Rational shift() const { return shift_.value_or(Rational(0)); }

private:
    LadderContext(const Family& f, int m) : family_(f), m_(m) {}

    Family family_;
    int m_;
    std::optional<Rational> k_;
    Rational delta_{0};
    std::optional<Rational> shift_;
};

/// The operators themselves, acting on κ-power functions.
/// a_m f = κ f' − m κ' f
template <class T>
KFunction<T> apply_a(const Family& f, int m, const KFunction<T>& g) {
    const Poly<T> ds = f.sigma_poly<T>().derivative();
    return g.derivative().kappa_shift(1) - g.times(ds).kappa_shift(-1) * (T(m) / T(2));
}

/// a_m^+ f = −κ f' − (τ/κ) f − (m−1) κ' f
template <class T>
KFunction<T> apply_a_plus(const Family& f, int m, const KFunction<T>& g) {
    const Poly<T> ds = f.sigma_poly<T>().derivative();
    KFunction<T> r = g.derivative().kappa_shift(1) * T(-1);
    r -= g.times(f.tau_poly<T>()).kappa_shift(-1);
    r -= g.times(ds).kappa_shift(-1) * (T(m - 1) / T(2));
    return r;
}

/// κ' f
template <class T>
KFunction<T> apply_dkappa(const Family& f, const KFunction<T>& g) {
    return g.times(f.sigma_poly<T>().derivative()).kappa_shift(-1) * (T(1) / T(2));
}

/// H_m f = −σ f'' − τ f' + v_m f
template <class T>
KFunction<T> apply_H(const Family& f, int m, const KFunction<T>& g) {
    const Poly<T> sg = f.sigma_poly<T>();
    const Poly<T> ds = sg.derivative();
    const Poly<T> tau = f.tau_poly<T>();
    const T mm(m);
    KFunction<T> r = g.derivative().derivative().times(sg) * T(-1);
    r -= g.derivative().times(tau);
    const Poly<T> singular = ds * ds * (mm * T(m - 2) / T(4)) + tau * ds * (mm / T(2));
    r += g.times(singular).kappa_shift(-2);
    const T constant = -mm * T(m - 2) * CoeffTraits<T>::from(f.sigma_coeffs()[2]) -
                       mm * CoeffTraits<T>::from(f.alpha_exact());
    r += g * constant;
    return r;
}

template <class T>
KFunction<T> as_kfunction(const AssociatedFunction<T>& af) {
    return KFunction<T>::term(af.family, af.m, af.poly);
}

namespace detail {
void check_context(const LadderContext& ctx, const Family& f, int m_expected, int m_given);
}

/// a_m Φ_{ℓ,m} = Φ_{ℓ,m+1} (the zero function when ℓ = m).
template <class T>
AssociatedFunction<T> raise_op(const LadderContext& ctx, const AssociatedFunction<T>& af) {
    detail::check_context(ctx, af.family, ctx.m(), af.m);
    KFunction<T> r = apply_a(af.family, ctx.m(), as_kfunction(af));
    return {af.family, af.l, ctx.m() + 1, r.reshape(ctx.m() + 1)};
}

/// a_m^+ applied to a function of order m+1; for Φ_{ℓ,m+1} the result is
/// (λ_ℓ−λ_m)Φ_{ℓ,m}. Non-polynomial intermediate terms must cancel exactly.
template <class T>
AssociatedFunction<T> lower_op(const LadderContext& ctx, const AssociatedFunction<T>& af) {
    detail::check_context(ctx, af.family, ctx.m() + 1, af.m);
    if (!(ctx.m() < af.l)) throw Error(ErrorKind::IndexViolation, "lowering needs m < l");
    KFunction<T> r = apply_a_plus(af.family, ctx.m(), as_kfunction(af));
    return {af.family, af.l, ctx.m(), r.reshape(ctx.m())};
}

template <class T>
AssociatedFunction<T> hamiltonian_apply(const LadderContext& ctx, const AssociatedFunction<T>& af) {
    detail::check_context(ctx, af.family, ctx.m(), af.m);
    KFunction<T> r = apply_H(af.family, ctx.m(), as_kfunction(af));
    return {af.family, af.l, af.m, r.reshape(af.m)};
}

/// Φ_{ℓ,m} rebuilt from κ^ℓ by the normalized chain of a^+ operators.
template <class T>
AssociatedFunction<T> lowering_chain(const Family& f, int l, int m) {
    if (m < 0 || m > l || !cutoff(f).admits(l)) throw Error(ErrorKind::IndexViolation, "need 0 <= m <= l < cutoff");
    AssociatedFunction<T> cur{f, l, l, Poly<T>::constant(T(1))};
    const Rational lam = eigenvalue_formula(f, l);
    for (int j = l - 1; j >= m; --j) {
        KFunction<T> r = apply_a_plus(f, j, as_kfunction(cur));
        const T scale = CoeffTraits<T>::from(Rational(1) / (lam - eigenvalue_formula(f, j)));
        cur = {f, l, j, r.reshape(j) * scale};
    }
    return cur;
}

enum class Ladder { raise, lower };

/// ã_m = a_m + c or ã_m^+ = a_m^+ + c with c = δ/(2m+2k+1). The image is
/// `ladder` + `shift`·`input`; the two parts have different κ orders.
template <class T>
struct TildeImage {
    AssociatedFunction<T> ladder;
    T shift;
    AssociatedFunction<T> input;

    KFunction<T> as_function() const { return as_kfunction(ladder) + as_kfunction(input) * shift; }
};

template <class T>
TildeImage<T> tilde_apply(const LadderContext& ctx, const AssociatedFunction<T>& af, Ladder which) {
    if (!ctx.has_tilde()) {
        throw Error(ErrorKind::NoWeightPower, "context has no shifted ladder operators");
    }
    const T c = CoeffTraits<T>::from(ctx.shift());
    if (which == Ladder::raise) return {raise_op(ctx, af), c, af};
    detail::check_context(ctx, af.family, ctx.m() + 1, af.m);
    KFunction<T> r = apply_a_plus(af.family, ctx.m(), as_kfunction(af));
    return {{af.family, af.l, ctx.m(), r.reshape(ctx.m())}, c, af};
}

struct IdentityEntry {
    std::string identity;
    /// Level of the Φ test function, or -1 for a monomial probe κ^j s^k.
    int l;
    int m;
    /// Power k of the monomial probe (-1 for Φ test functions).
    int probe;
    double residual;
};

struct IdentityReport {
    Family family;
    int m;
    bool exact;
    std::optional<Rational> delta;
    std::vector<IdentityEntry> entries;

    double max_residual() const;
    /// Exact mode requires every residual to be 0.
    bool passed(double float_tol = 1e-12) const;
};

/// Verifies a_m^+a_m = H_m−λ_m, a_ma_m^+ = H_{m+1}−λ_m, H_m a_m^+ = a_m^+H_{m+1},
/// a_mH_m = H_{m+1}a_m on Φ_{ℓ,m}, Φ_{ℓ,m+1} (ℓ ≤ lmax) and on monomials
/// κ^m s^k, κ^{m+1} s^k; also the eigen, raising and lowering relations, and
/// the shifted factorizations when the context carries δ.
template <class T>
IdentityReport check_identities(const LadderContext& ctx, int lmax);

/// Pointwise residual of the three-term recurrence
///   Φ_{ℓ,m+1} + (τ/κ + 2(m−1)κ')Φ_{ℓ,m} + (λ_ℓ−λ_{m−1})Φ_{ℓ,m−1} = 0
/// (Φ_{ℓ,ℓ+1} = 0 at m = ℓ), relative to the largest term.
double recurrence_residual(const Family& f, int l, int m, double s);

extern template IdentityReport check_identities<Rational>(const LadderContext&, int);
extern template IdentityReport check_identities<double>(const LadderContext&, int);

}  // namespace hyperfact
