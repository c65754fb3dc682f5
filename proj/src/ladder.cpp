#include "hyperfact/ladder.hpp"

#include <algorithm>
#include <cmath>

namespace hyperfact {

LadderContext LadderContext::make(const Family& f, int m) {
    if (m < 0) throw Error(ErrorKind::IndexViolation, "m must be nonnegative");
    if (!cutoff(f).admits(m + 1)) {
        throw Error(ErrorKind::CutoffExceeded, "ladder operators need m+1 below the cutoff (m=" + std::to_string(m) + ")");
    }
    return LadderContext(f, m);
}

LadderContext LadderContext::make_tilde(const Family& f, int m, const Rational& delta) {
    LadderContext ctx = make(f, m);
    const Rational den = tilde_denominator(f, m);
    ctx.k_ = weight_power_k(f);
    ctx.delta_ = delta;
    ctx.shift_ = delta / den;
    return ctx;
}

namespace detail {
void check_context(const LadderContext& ctx, const Family& f, int m_expected, int m_given) {
    if (!(ctx.family() == f)) throw Error(ErrorKind::ContextMismatch, "function belongs to another family");
    if (m_expected != m_given) {
        throw Error(ErrorKind::ContextMismatch,
                    "operator expects order " + std::to_string(m_expected) + ", got " + std::to_string(m_given));
    }
}
}  // namespace detail

double IdentityReport::max_residual() const {
    double r = 0.0;
    for (const auto& e : entries) r = std::max(r, e.residual);
    return r;
}

bool IdentityReport::passed(double float_tol) const {
    return exact ? max_residual() == 0.0 : max_residual() <= float_tol;
}

namespace {

template <class T>
struct Probe {
    int l;
    int k;
    KFunction<T> fn;
};

template <class T>
std::vector<Probe<T>> probes(const Family& f, int order, int lmax) {
    std::vector<Probe<T>> out;
    const Cutoff c = cutoff(f);
    for (int l = order; l <= lmax && c.admits(l); ++l) {
        try {
            out.push_back({l, -1, as_kfunction(assoc<T>(f, l, order))});
        } catch (const Error& e) {
            // degenerate spectra (all λ_ℓ equal) have no polynomial Φ_ℓ; the
            // operator identities are still probed on monomials
            if (e.kind() != ErrorKind::RecurrenceBreakdown) throw;
            break;
        }
    }
    for (int k = 0; k <= lmax; ++k) out.push_back({-1, k, KFunction<T>::term(f, order, Poly<T>::monomial(k))});
    return out;
}

}  // namespace

template <class T>
IdentityReport check_identities(const LadderContext& ctx, int lmax) {
    const Family& f = ctx.family();
    const int m = ctx.m();
    IdentityReport rep{f, m, CoeffTraits<T>::exact, std::nullopt, {}};
    if (ctx.has_tilde()) rep.delta = ctx.delta();
    auto add = [&](const char* name, int l, int k, const KFunction<T>& lhs, const KFunction<T>& rhs) {
        rep.entries.push_back({name, l, m, k, kfunction_residual(lhs, rhs)});
    };
    const T lam_m = CoeffTraits<T>::from(eigenvalue_formula(f, m));
    const T c = CoeffTraits<T>::from(ctx.shift());
    const T lam_tilde = ctx.has_tilde() ? CoeffTraits<T>::from(tilde_eigenvalue_exact(f, m, ctx.delta())) : T(0);
    const T delta = CoeffTraits<T>::from(ctx.delta());

    for (const auto& p : probes<T>(f, m, lmax)) {
        const KFunction<T>& g = p.fn;
        KFunction<T> ag = apply_a(f, m, g);
        KFunction<T> hg = apply_H(f, m, g);
        add("aplus_a", p.l, p.k, apply_a_plus(f, m, ag), hg - g * lam_m);
        add("a_H", p.l, p.k, apply_a(f, m, hg), apply_H(f, m + 1, ag));
        if (p.l >= 0) {
            const T lam_l = CoeffTraits<T>::from(eigenvalue_formula(f, p.l));
            add("eigen", p.l, p.k, hg, g * lam_l);
            KFunction<T> next(f);
            if (p.l > m) next = as_kfunction(assoc<T>(f, p.l, m + 1));
            add("raise", p.l, p.k, ag, next);
        }
        if (ctx.has_tilde()) {
            KFunction<T> tg = ag + g * c;
            KFunction<T> tt = apply_a_plus(f, m, tg) + tg * c;
            KFunction<T> htilde = hg - apply_dkappa(f, g) * delta;
            add("tilde_aplus_a", p.l, p.k, tt, htilde - g * lam_tilde);
        }
    }
    for (const auto& p : probes<T>(f, m + 1, lmax)) {
        const KFunction<T>& g = p.fn;
        KFunction<T> apg = apply_a_plus(f, m, g);
        KFunction<T> h1g = apply_H(f, m + 1, g);
        add("a_aplus", p.l, p.k, apply_a(f, m, apg), h1g - g * lam_m);
        add("H_aplus", p.l, p.k, apply_H(f, m, apg), apply_a_plus(f, m, h1g));
        if (p.l >= 0) {
            const T lam_l = CoeffTraits<T>::from(eigenvalue_formula(f, p.l));
            add("lower", p.l, p.k, apg, as_kfunction(assoc<T>(f, p.l, m)) * (lam_l - lam_m));
            add("eigen_aplus", p.l, p.k, apply_H(f, m, apg), apg * lam_l);
        }
        if (ctx.has_tilde()) {
            KFunction<T> tg = apg + g * c;
            KFunction<T> tt = apply_a(f, m, tg) + tg * c;
            KFunction<T> htilde = h1g - apply_dkappa(f, g) * delta;
            add("tilde_a_aplus", p.l, p.k, tt, htilde - g * lam_tilde);
        }
    }
    return rep;
}

template IdentityReport check_identities<Rational>(const LadderContext&, int);
template IdentityReport check_identities<double>(const LadderContext&, int);

double recurrence_residual(const Family& f, int l, int m, double s) {
    if (m < 1 || m > l) throw Error(ErrorKind::IndexViolation, "recurrence needs 1 <= m <= l");
    const double up = m < l ? eval(assoc<Rational>(f, l, m + 1), s).value : 0.0;
    const double mid = (f.tau(s) / f.kappa(s) + 2.0 * (m - 1) * f.dkappa(s)) * eval(assoc<Rational>(f, l, m), s).value;
    const double low =
        Rational(eigenvalue_formula(f, l) - eigenvalue_formula(f, m - 1)).get_d() * eval(assoc<Rational>(f, l, m - 1), s).value;
    const double scale = std::max({std::abs(up), std::abs(mid), std::abs(low), 1e-300});
    return std::abs(up + mid + low) / scale;
}

}  // namespace hyperfact
