#include "hyperfact/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "hyperfact/ladder.hpp"
#include "hyperfact/quadrature.hpp"

namespace hyperfact {

namespace {

constexpr double integral_tol = 1e-12;

std::string number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

void require_inside(const Family& f, double s) {
    if (!f.contains(s)) throw Error(ErrorKind::OutOfDomain, "s=" + std::to_string(s) + " outside the interval");
}

// log of σ^m ρ e^{−rX}
double log_density_at(const Family& f, int m, double rate, const Locus& p) {
    double g = f.log_weighted_sigma_power(m, p);
    if (rate != 0.0) g -= rate * f.kappa_primitive(p.s);
    return g;
}

double density_integral(const Family& f, int m, double rate, double s0, double s) {
    require_inside(f, s);
    if (s == s0) return 0.0;
    auto g = [&](double t) { return std::exp(log_density_at(f, m, rate, f.at(t))); };
    if (std::abs(s - s0) <= 1e-6 * std::max(1.0, std::abs(s0))) {
        static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
        static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        const double mid = 0.5 * (s + s0), half = 0.5 * (s - s0);
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) sum += weights[i] * g(mid + half * nodes[i]);
        return sum * half;
    }
    try {
        return quad(g, s0, s, integral_tol).value;
    } catch (const Error& e) {
        throw Error(ErrorKind::QuadratureFailure, std::string("cumulative weight: ") + e.what());
    }
}

GammaRays density_rays(const Family& f, int m, double rate, double s0) {
    const Interval iv = f.interval();
    auto lower_side = [&](double g) {
        const Locus p = std::isinf(iv.lower) ? f.at(s0 - g) : f.near_lower(g);
        return std::exp(log_density_at(f, m, rate, p));
    };
    auto upper_side = [&](double g) {
        const Locus p = std::isinf(iv.upper) ? f.at(s0 + g) : f.near_upper(g);
        return std::exp(log_density_at(f, m, rate, p));
    };
    const TailLimit lo = tail_limit(lower_side, std::isinf(iv.lower) ? INFINITY : s0 - iv.lower);
    const TailLimit hi = tail_limit(upper_side, std::isinf(iv.upper) ? INFINITY : iv.upper - s0);
    return {lo.finite ? -lo.value : -INFINITY, hi.finite ? hi.value : INFINITY};
}

struct Pointwise {
    double sigma, dsigma, tau, kappa, dkappa;
};

Pointwise pointwise(const Family& f, double s) {
    return {f.sigma(s), f.dsigma(s), f.tau(s), f.kappa(s), f.dkappa(s)};
}

}  // namespace

bool GammaRays::admits(double gamma) const {
    if (std::isnan(gamma)) return false;
    if (gamma == INFINITY) return true;
    if (has_upper_ray() && gamma >= -lower_limit + gamma_margin) return true;
    if (has_lower_ray() && gamma <= -upper_limit - gamma_margin) return true;
    return false;
}

std::string GammaRays::describe() const {
    std::string out;
    if (has_upper_ray()) out = "γ > " + number(-lower_limit);
    if (has_lower_ray()) out += (out.empty() ? "" : " or ") + std::string("γ < ") + number(-upper_limit);
    if (out.empty()) out = "γ = inf only";
    return out;
}

Deformation Deformation::make(const Family& f, int m, double gamma, std::optional<double> s0,
                              std::optional<Rational> delta, TildeForm form) {
    if (m < 0) throw Error(ErrorKind::IndexViolation, "m must be nonnegative");
    if (!cutoff(f).admits(m + 1)) {
        throw Error(ErrorKind::CutoffExceeded, "deformation needs m+1 below the cutoff (m=" + std::to_string(m) + ")");
    }
    if (std::isnan(gamma) || gamma == -INFINITY) {
        throw Error(ErrorKind::ParameterViolation, "gamma must be a real number or +inf");
    }
    Deformation d(f);
    d.m_ = m;
    d.gamma_ = gamma;
    d.s0_ = s0.value_or(f.base_point());
    if (!f.contains(d.s0_)) {
        throw Error(ErrorKind::OutOfDomain, "base point s0=" + std::to_string(d.s0_) + " outside the interval");
    }
    d.form_ = form;
    d.lambda_m_ = eigenvalue_formula(f, m).get_d();
    d.lambda_tilde_ = d.lambda_m_;
    if (delta) {
        const Rational c = *delta / tilde_denominator(f, m);
        d.delta_ = delta;
        d.shift_ = c.get_d();
        d.lambda_tilde_ = tilde_eigenvalue_exact(f, m, *delta).get_d();
        if (form == TildeForm::isospectral) d.density_rate_ = 2.0 * d.shift_;
    }
    d.rays_ = density_rays(f, m, d.density_rate_, d.s0_);
    if (!d.rays_.admits(gamma)) {
        throw Error(ErrorKind::InadmissibleGamma,
                    "gamma=" + number(gamma) + " makes the deformation singular; admissible: " + d.rays_.describe());
    }
    return d;
}

double Deformation::log_density(const Locus& p) const { return log_density_at(family_, m_, density_rate_, p); }

double Deformation::log_density_derivative(double s) const {
    const Pointwise q = pointwise(family_, s);
    double r = (m_ - 1) * q.dsigma / q.sigma + q.tau / q.sigma;
    if (density_rate_ != 0.0) r -= density_rate_ / q.kappa;
    return r;
}

double Deformation::integral(double s) const { return density_integral(family_, m_, density_rate_, s0_, s); }

DifferentiableValue Deformation::deformation_term(double s) const {
    require_inside(family_, s);
    if (undeformed()) return {0.0, 0.0};
    const double g = std::exp(log_density(family_.at(s)));
    const double dval = g / (gamma_ + integral(s));
    return {dval, dval * log_density_derivative(s) - dval * dval};
}

double cumulative_weight(const Family& f, int m, double s, double s0) {
    require_inside(f, s0);
    return density_integral(f, m, 0.0, s0, s);
}

double cumulative_weight(const Family& f, int m, double s) { return cumulative_weight(f, m, s, f.base_point()); }

GammaRays admissible_gamma_range(const Family& f, int m, double s0) {
    require_inside(f, s0);
    return density_rays(f, m, 0.0, s0);
}

GammaRays admissible_gamma_range(const Family& f, int m) { return admissible_gamma_range(f, m, f.base_point()); }

DifferentiableValue psi_gamma(const Deformation& d, double s) {
    const Family& f = d.family();
    const DifferentiableValue D = d.deformation_term(s);
    const Pointwise q = pointwise(f, s);
    const double s2 = q.sigma * q.sigma;
    const double value = -q.tau / q.sigma - (d.m() - 1) * q.dsigma / (2.0 * q.sigma) + D.value;
    const double deriv = -(f.dtau() * q.sigma - q.tau * q.dsigma) / s2 -
                         (d.m() - 1) / 2.0 * (f.d2sigma() * q.sigma - q.dsigma * q.dsigma) / s2 + D.deriv;
    return {value, deriv};
}

DifferentiableValue phi_gamma(const Deformation& d, double s) {
    const Family& f = d.family();
    const DifferentiableValue D = d.deformation_term(s);
    const Pointwise q = pointwise(f, s);
    const double value = -d.m() * q.dsigma / (2.0 * q.sigma) + D.value;
    const double deriv =
        -d.m() / 2.0 * (f.d2sigma() * q.sigma - q.dsigma * q.dsigma) / (q.sigma * q.sigma) + D.deriv;
    return {value, deriv};
}

double upper_v(const Deformation& d, double s) {
    require_inside(d.family(), s);
    double v = v_m(d.family(), d.m() + 1, s);
    if (d.delta()) v -= d.delta()->get_d() * d.family().dkappa(s);
    return v;
}

double check_riccati(const Deformation& d, const std::vector<double>& points) {
    const bool shifted = d.delta() && d.tilde_form() == TildeForm::isospectral;
    double worst = 0.0;
    for (double s : points) {
        const Pointwise q = pointwise(d.family(), s);
        DifferentiableValue psi = psi_gamma(d, s);
        double target = v_m(d.family(), d.m() + 1, s) - d.lambda_m();
        if (shifted) {
            const double c = d.shift();
            psi.value += c / q.kappa;
            psi.deriv -= c * q.dkappa / (q.kappa * q.kappa);
            target = upper_v(d, s) - d.lambda_m_shifted();
        }
        const double terms[] = {psi.deriv, psi.value * psi.value, q.tau / q.sigma * psi.value, target / q.sigma};
        const double residual = terms[0] + terms[1] + terms[2] - terms[3];
        double scale = 1.0;
        for (double t : terms) scale = std::max(scale, std::abs(t));
        worst = std::max(worst, std::abs(residual) / scale);
    }
    return worst;
}

double first_order_defect(const Deformation& d, double s) {
    const Pointwise q = pointwise(d.family(), s);
    return q.sigma * phi_gamma(d, s).value - q.sigma * psi_gamma(d, s).value + q.kappa * q.dkappa - q.tau;
}

double factorization_defect(const Deformation& d, double s) {
    const Pointwise q = pointwise(d.family(), s);
    const DifferentiableValue psi = psi_gamma(d, s);
    const double phi = phi_gamma(d, s).value;
    const double w = q.kappa * q.dkappa * psi.value + q.sigma * psi.deriv + q.sigma * phi * psi.value;
    const double lhs = w + d.lambda_m() + d.shift() * q.kappa * (psi.value + phi);
    return lhs - upper_v(d, s);
}

double b_apply(const Deformation& d, double s, const DifferentiableValue& fval, BOperator which) {
    require_inside(d.family(), s);
    const double k = d.family().kappa(s);
    if (which == BOperator::b) return k * (fval.deriv + phi_gamma(d, s).value * fval.value);
    return k * (-fval.deriv + psi_gamma(d, s).value * fval.value);
}

double tilde_b_apply(const Deformation& d, double s, const DifferentiableValue& fval, BOperator which) {
    return b_apply(d, s, fval, which) + d.shift() * fval.value;
}

double partner_potential_v(const Deformation& d, double s) {
    require_inside(d.family(), s);
    const Pointwise q = pointwise(d.family(), s);
    const double psi = psi_gamma(d, s).value;
    const DifferentiableValue phi = phi_gamma(d, s);
    return q.sigma * psi * phi.value - q.sigma * phi.deriv - q.dsigma / 2.0 * phi.value + d.lambda_m();
}

double tilde_partner_v(const Deformation& d, double s) {
    const double v = partner_potential_v(d, s);
    if (d.shift() == 0.0) return v;
    return v + d.shift() * d.family().kappa(s) * (psi_gamma(d, s).value + phi_gamma(d, s).value);
}

PartnerEigenfunction::PartnerEigenfunction(const Deformation& d, int l, KFunction<double> f)
    : d_(d), level_(l), eigenvalue_(0.0), f_(std::move(f)), f1_(f_.derivative()), f2_(f1_.derivative()) {
    const Family& fam = d.family();
    if (d.delta()) {
        const Rational den = tilde_denominator(fam, l);
        eigenvalue_ = Rational(eigenvalue_formula(fam, l) - *d.delta() * *d.delta() / (den * den)).get_d();
    } else {
        eigenvalue_ = hyperfact::eigenvalue(fam, l);
    }
}

DifferentiableValue PartnerEigenfunction::upper(double s) const { return {f_(s), f1_(s)}; }

DifferentiableValue PartnerEigenfunction::operator()(double s) const {
    require_inside(d_.family(), s);
    const double k = d_.family().kappa(s);
    const double dk = d_.family().dkappa(s);
    const DifferentiableValue psi = psi_gamma(d_, s);
    const double c = d_.shift();
    const double f0 = f_(s), f1 = f1_(s), f2 = f2_(s);
    const double inner = -f1 + psi.value * f0;
    const double value = k * inner + c * f0;
    const double deriv = dk * inner + k * (-f2 + psi.deriv * f0 + psi.value * f1) + c * f1;
    return {value, deriv};
}

PartnerEigenfunction partner_eigenfunction(const Deformation& d, int l) {
    const Family& f = d.family();
    if (!(d.m() < l) || !cutoff(f).admits(l)) {
        throw Error(ErrorKind::IndexViolation, "partner eigenfunctions need m < l < cutoff (l=" + std::to_string(l) + ")");
    }
    if (d.delta()) {
        return PartnerEigenfunction(d, l, tilde_eigenfunction<Rational>(f, d.m() + 1, l, *d.delta()).convert<double>(f));
    }
    const AssociatedFunction<Rational> af = assoc<Rational>(f, l, d.m() + 1);
    return PartnerEigenfunction(d, l, as_kfunction(af).convert<double>(f));
}

template <class T>
KFunction<T> tilde_eigenfunction(const Family& f, int order, int j, const Rational& delta) {
    if (order < 0 || j < order || !cutoff(f).admits(j)) {
        throw Error(ErrorKind::IndexViolation, "need 0 <= order <= j < cutoff");
    }
    auto shifted_lambda = [&](int i, const Rational& c) -> Rational { return eigenvalue_formula(f, i) - c * c; };
    const Rational cj = delta / tilde_denominator(f, j);
    const Rational lam = shifted_lambda(j, cj);
    KFunction<T> g = KFunction<T>::term(f, j, Poly<T>::constant(T(1)), CoeffTraits<T>::from(cj));
    for (int i = j - 1; i >= order; --i) {
        const Rational ci = delta / tilde_denominator(f, i);
        g = apply_a_plus(f, i, g) + g * CoeffTraits<T>::from(ci);
        const Rational gap = lam - shifted_lambda(i, ci);
        if (gap != 0) g *= CoeffTraits<T>::from(Rational(1 / gap));
    }
    return g;
}

template KFunction<Rational> tilde_eigenfunction<Rational>(const Family&, int, int, const Rational&);
template KFunction<double> tilde_eigenfunction<double>(const Family&, int, int, const Rational&);

}  // namespace hyperfact
