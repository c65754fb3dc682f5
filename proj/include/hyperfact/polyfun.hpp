#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hyperfact/error.hpp"
#include "hyperfact/family.hpp"
#include "hyperfact/poly.hpp"

namespace hyperfact {

/// A value and its first derivative at one point.
struct DifferentiableValue {
    double value = 0.0;
    double deriv = 0.0;
};

namespace detail {
template <class T>
T factorial(int n) {
    T r(1);
    for (int i = 2; i <= n; ++i) r *= T(i);
    return r;
}
}  // namespace detail

/// Polynomial eigenfunction Φ_ℓ of σy'' + τy' + λ_ℓ y = 0, normalized so that
/// its leading coefficient is 1/ℓ!. Coefficients come from the power-series
/// recurrence
///   (n−ℓ)(σ2(n+ℓ−1)+τ1) c_n + (n+1)(σ1 n+τ0) c_{n+1} + σ0 (n+2)(n+1) c_{n+2} = 0
/// solved downward from c_ℓ.
template <class T>
Poly<T> phi(const Family& f, int l) {
    if (l < 0) throw Error(ErrorKind::IndexViolation, "level must be nonnegative");
    if (!cutoff(f).admits(l)) {
        throw Error(ErrorKind::CutoffExceeded, "l=" + std::to_string(l) + " is not below the cutoff");
    }
    const auto& sg = f.sigma_coeffs();
    const T s0 = CoeffTraits<T>::from(sg[0]);
    const T s1 = CoeffTraits<T>::from(sg[1]);
    const T s2 = CoeffTraits<T>::from(sg[2]);
    const T t0 = CoeffTraits<T>::from(f.beta_exact());
    const T t1 = CoeffTraits<T>::from(f.alpha_exact());

    std::vector<T> c(static_cast<std::size_t>(l) + 3, T(0));
    c[static_cast<std::size_t>(l)] = T(1) / detail::factorial<T>(l);
    for (int n = l - 1; n >= 0; --n) {
        const T denom = T(n - l) * (s2 * T(n + l - 1) + t1);
        if (denom == T(0)) {
            throw Error(ErrorKind::RecurrenceBreakdown,
                        "zero pivot at n=" + std::to_string(n) + " for l=" + std::to_string(l));
        }
        const auto idx = static_cast<std::size_t>(n);
        const T rhs = T(n + 1) * (s1 * T(n) + t0) * c[idx + 1] + s0 * T((n + 2) * (n + 1)) * c[idx + 2];
        c[idx] = -rhs / denom;
    }
    c.resize(static_cast<std::size_t>(l) + 1);
    return Poly<T>(std::move(c));
}

/// σΦ'' + τΦ' + λ_ℓΦ as a polynomial (identically zero for Φ = phi(f, ℓ)).
template <class T>
Poly<T> phi_residual(const Family& f, int l, const Poly<T>& p) {
    const T lambda = CoeffTraits<T>::from(eigenvalue_formula(f, l));
    return f.sigma_poly<T>() * p.derivative(2) + f.tau_poly<T>() * p.derivative() + p * lambda;
}

/// Φ_{ℓ,m} = κ^m · poly with poly = d^mΦ_ℓ/ds^m.
template <class T>
struct AssociatedFunction {
    Family family;
    int l;
    int m;
    Poly<T> poly;
};

template <class T>
AssociatedFunction<T> assoc(const Family& f, int l, int m) {
    if (m < 0 || m > l) {
        throw Error(ErrorKind::IndexViolation,
                    "need 0 <= m <= l (got l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
    }
    if (!cutoff(f).admits(l)) {
        throw Error(ErrorKind::IndexViolation, "l=" + std::to_string(l) + " is not below the cutoff");
    }
    return {f, l, m, phi<T>(f, l).derivative(m)};
}

/// Value and s-derivative of κ^m(s)·p(s).
template <class T>
DifferentiableValue eval_kappa_power(const Family& f, int m, const Poly<T>& p, double s) {
    if (!f.contains(s)) throw Error(ErrorKind::OutOfDomain, "s=" + std::to_string(s) + " outside the interval");
    const double k = f.kappa(s);
    const double pv = p(s);
    const double km = std::pow(k, m);
    double deriv = km * p.derivative()(s);
    if (m != 0) deriv += m * std::pow(k, m - 1) * f.dkappa(s) * pv;
    return {km * pv, deriv};
}

template <class T>
DifferentiableValue eval(const AssociatedFunction<T>& af, double s) {
    return eval_kappa_power(af.family, af.m, af.poly, s);
}

/// Evaluates the classical Hermite/Laguerre/Jacobi identification of Φ_ℓ by
/// its own three-term recurrence at 16 interior points and returns the
/// constant ratio classical/Φ_ℓ. Throws NotProportional if the ratio varies
/// by more than 1e-8 relatively.
double classical_crosscheck(const Family& f, int l);

/// The classical polynomial itself (up to the constant) at s.
double classical_value(const Family& f, int l, double s);

/// ∫_a^b g ds, split at the base point; each half is integrated in the
/// distance to its own endpoint so that g sees exact endpoint gaps.
double integrate_interval(const Family& f, const std::function<double(const Locus&)>& g, double tol = 1e-11);

/// ∫ σ^m p q ρ over (a,b).
double weighted_inner(const Family& f, int m, const Poly<double>& p, const Poly<double>& q, double tol = 1e-11);

/// ‖Φ_{ℓ,m}‖ = (∫ Φ_{ℓ,m}² ρ)^{1/2}
double norm(const Family& f, int l, int m);

/// G[i][j] = ∫ Φ_{i,m} Φ_{j,m} ρ for m ≤ i, j ≤ lmax (indices shifted by m).
std::vector<std::vector<double>> gram(const Family& f, int m, int lmax);

}  // namespace hyperfact
