#include "hyperfact/family.hpp"

#include <cmath>
#include <string>

#include "hyperfact/error.hpp"

namespace hyperfact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<Rational, 3> sigma_of(Kind kind) {
    switch (kind) {
    case Kind::constant: return {Rational(1), Rational(0), Rational(0)};
    case Kind::linear: return {Rational(0), Rational(1), Rational(0)};
    case Kind::one_minus_s2: return {Rational(1), Rational(0), Rational(-1)};
    case Kind::s2_minus_one: return {Rational(-1), Rational(0), Rational(1)};
    case Kind::s2: return {Rational(0), Rational(0), Rational(1)};
    case Kind::s2_plus_one: return {Rational(1), Rational(0), Rational(1)};
    }
    return {};
}

Interval interval_of(Kind kind) {
    switch (kind) {
    case Kind::constant:
    case Kind::s2_plus_one: return {-kInf, kInf};
    case Kind::linear:
    case Kind::s2: return {0.0, kInf};
    case Kind::one_minus_s2: return {-1.0, 1.0};
    case Kind::s2_minus_one: return {1.0, kInf};
    }
    return {-kInf, kInf};
}

bool table1_holds(Kind kind, const Rational& a, const Rational& b) {
    switch (kind) {
    case Kind::constant: return a < 0;
    case Kind::linear: return a < 0 && b > 0;
    case Kind::one_minus_s2: return a < b && b < -a;
    case Kind::s2_minus_one: return -b < a && a < 0;
    case Kind::s2: return a < 0 && b > 0;
    case Kind::s2_plus_one: return a < 0;
    }
    return false;
}

// Rows of the ρ = σ^k table, with the sign condition that keeps ρ sensible.
bool table2_row(Kind kind, const Rational& a, const Rational& b) {
    switch (kind) {
    case Kind::constant: return false;
    case Kind::linear: return a == 0 && b > 0;
    default: return b == 0 && a < 0;
    }
}

std::string format_params(const Rational& a, const Rational& b) {
    return "alpha=" + to_string(a) + ", beta=" + to_string(b);
}

}  // namespace

std::string_view tag(Kind kind) noexcept {
    switch (kind) {
    case Kind::constant: return "const";
    case Kind::linear: return "linear";
    case Kind::one_minus_s2: return "one_minus_s2";
    case Kind::s2_minus_one: return "s2_minus_one";
    case Kind::s2: return "s2";
    case Kind::s2_plus_one: return "s2_plus_one";
    }
    return "";
}

Kind kind_from_tag(std::string_view t) {
    for (Kind k : all_kinds)
        if (tag(k) == t) return k;
    throw Error(ErrorKind::ParameterViolation, "unknown family kind '" + std::string(t) + "'");
}

std::string_view sigma_label(Kind kind) noexcept {
    switch (kind) {
    case Kind::constant: return "1";
    case Kind::linear: return "s";
    case Kind::one_minus_s2: return "1-s^2";
    case Kind::s2_minus_one: return "s^2-1";
    case Kind::s2: return "s^2";
    case Kind::s2_plus_one: return "s^2+1";
    }
    return "";
}

std::string_view constraint_label(Kind kind) noexcept {
    switch (kind) {
    case Kind::constant: return "alpha < 0";
    case Kind::linear: return "alpha < 0 and beta > 0";
    case Kind::one_minus_s2: return "alpha < beta < -alpha";
    case Kind::s2_minus_one: return "-beta < alpha < 0";
    case Kind::s2: return "alpha < 0 and beta > 0";
    case Kind::s2_plus_one: return "alpha < 0";
    }
    return "";
}

Family::Family(Kind kind, const Rational& alpha, const Rational& beta)
    : kind_(kind),
      alpha_q_(alpha),
      beta_q_(beta),
      alpha_(alpha.get_d()),
      beta_(beta.get_d()),
      sigma_(sigma_of(kind)),
      sd_{sigma_[0].get_d(), sigma_[1].get_d(), sigma_[2].get_d()},
      interval_(interval_of(kind)),
      table1_(table1_holds(kind, alpha, beta)) {}

Family Family::unchecked(Kind kind, const Rational& alpha, const Rational& beta) {
    return Family(kind, alpha, beta);
}

double Family::kappa(double s) const { return std::sqrt(sigma(s)); }

double Family::dkappa(double s) const { return dsigma(s) / (2.0 * kappa(s)); }

double Family::d2kappa(double s) const {
    double k = kappa(s);
    double ds = dsigma(s);
    return d2sigma() / (2.0 * k) - ds * ds / (4.0 * k * k * k);
}

double Family::kappa_primitive(double s) const {
    switch (kind_) {
    case Kind::constant: return s;
    case Kind::linear: return 2.0 * std::sqrt(s);
    case Kind::one_minus_s2: return std::asin(s);
    case Kind::s2_minus_one: return std::acosh(s);
    case Kind::s2: return std::log(s);
    case Kind::s2_plus_one: return std::asinh(s);
    }
    return 0.0;
}

Locus Family::at(double s) const {
    return {s, std::isinf(interval_.lower) ? kInf : s - interval_.lower,
            std::isinf(interval_.upper) ? kInf : interval_.upper - s};
}

Locus Family::near_lower(double gap) const {
    const double width = interval_.upper - interval_.lower;
    return {interval_.lower + gap, gap, std::isinf(width) ? kInf : width - gap};
}

Locus Family::near_upper(double gap) const {
    const double width = interval_.upper - interval_.lower;
    return {interval_.upper - gap, std::isinf(width) ? kInf : width - gap, gap};
}

double Family::log_sigma(const Locus& p) const {
    const double s = p.s;
    switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::linear: return std::log(p.to_lower);
    case Kind::one_minus_s2: return std::log(p.to_lower) + std::log(p.to_upper);
    case Kind::s2_minus_one: return std::log(p.to_lower) + std::log(s + 1.0);
    case Kind::s2: return 2.0 * std::log(p.to_lower);
    case Kind::s2_plus_one: return std::abs(s) > 1e100 ? 2.0 * std::log(std::abs(s)) : std::log1p(s * s);
    }
    return 0.0;
}

double Family::log_weight(const Locus& p) const {
    const double a = alpha_;
    const double b = beta_;
    const double s = p.s;
    switch (kind_) {
    case Kind::constant: return a * s * s / 2.0 + b * s;
    case Kind::linear: return (b - 1.0) * std::log(p.to_lower) + a * s;
    case Kind::one_minus_s2:
        return (-(a - b) / 2.0 - 1.0) * std::log(p.to_lower) + (-(a + b) / 2.0 - 1.0) * std::log(p.to_upper);
    case Kind::s2_minus_one:
        return ((a - b) / 2.0 - 1.0) * std::log(s + 1.0) + ((a + b) / 2.0 - 1.0) * std::log(p.to_lower);
    case Kind::s2: return (a - 2.0) * std::log(p.to_lower) - b / p.to_lower;
    case Kind::s2_plus_one:
        return (a / 2.0 - 1.0) * log_sigma(p) + b * std::atan(s);
    }
    return 0.0;
}

double Family::log_weight(double s) const { return log_weight(at(s)); }

double Family::weight(double s) const {
    if (!contains(s)) {
        throw Error(ErrorKind::OutOfDomain, "s=" + std::to_string(s) + " outside the family interval");
    }
    return std::exp(log_weight(s));
}

double Family::log_weighted_sigma_power(int m, const Locus& p) const {
    double lw = log_weight(p);
    return m == 0 ? lw : m * log_sigma(p) + lw;
}

double Family::log_weighted_sigma_power(int m, double s) const { return log_weighted_sigma_power(m, at(s)); }

double Family::base_point() const {
    switch (kind_) {
    case Kind::constant:
    case Kind::s2_plus_one:
    case Kind::one_minus_s2: return 0.0;
    case Kind::linear:
    case Kind::s2: return 1.0;
    case Kind::s2_minus_one: return 2.0;
    }
    return 0.0;
}

std::vector<double> Family::sample_points(int count) const {
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const double s0 = base_point();
    const int per_side = count / 2;
    auto toward = [&](double end, int n, int dir) {
        for (int i = 0; i < n; ++i) {
            double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            if (std::isinf(end)) {
                pts.push_back(s0 + dir * std::pow(10.0, -1.0 + 3.0 * t));
            } else {
                double frac = 0.9 * std::pow(1e-6 / 0.9, t);
                pts.push_back(end + (s0 - end) * frac);
            }
        }
    };
    toward(interval_.lower, per_side, -1);
    toward(interval_.upper, count - per_side, +1);
    return pts;
}

namespace {

// log(σρ) along a sequence approaching `end` from the base point; the tail
// must decrease monotonically.
bool decays_toward(const Family& f, double end) {
    const double s0 = f.base_point();
    std::vector<double> logs;
    for (int k = 1; k <= 50; ++k) {
        double s = std::isinf(end) ? s0 + (end > 0 ? 1.0 : -1.0) * std::ldexp(1.0, k)
                                   : end + (s0 - end) * std::ldexp(1.0, -k);
        logs.push_back(f.log_weighted_sigma_power(1, s));
    }
    for (std::size_t i = logs.size() - 8; i < logs.size(); ++i) {
        if (!(logs[i] < logs[i - 1])) return false;
    }
    return logs.back() < logs[29];
}

}  // namespace

Family make_family(Kind kind, const Rational& alpha, const Rational& beta) {
    Family f(kind, alpha, beta);
    if (!f.table1_) {
        if (!table2_row(kind, alpha, beta)) {
            throw Error(ErrorKind::ParameterViolation,
                        "sigma=" + std::string(sigma_label(kind)) + " requires " + std::string(constraint_label(kind)) +
                            " (got " + format_params(alpha, beta) + ")");
        }
    }
    for (double s : f.sample_points(64)) {
        if (!(f.sigma(s) > 0.0) || !(f.log_weight(s) > -INFINITY) || std::isnan(f.log_weight(s))) {
            throw Error(ErrorKind::ParameterViolation,
                        "sigma or rho not positive at s=" + std::to_string(s) + " for " + format_params(alpha, beta));
        }
    }
    if (f.table1_) {
        const Interval iv = f.interval();
        for (double end : {iv.lower, iv.upper}) {
            if (!decays_toward(f, end)) {
                throw Error(ErrorKind::BoundaryDecayFailure,
                            "sigma*rho does not tend to 0 at s=" + std::to_string(end) + " for " +
                                format_params(alpha, beta));
            }
        }
    }
    return f;
}

Family make_family(Kind kind, double alpha, double beta) {
    return make_family(kind, to_rational(alpha), to_rational(beta));
}

Cutoff cutoff(const Family& f) {
    switch (f.kind()) {
    case Kind::constant:
    case Kind::linear:
    case Kind::one_minus_s2: return Cutoff::infinite();
    default: return Cutoff::finite((Rational(1) - f.alpha_exact()) / 2);
    }
}

Rational eigenvalue_formula(const Family& f, int l) {
    const Rational& s2 = f.sigma_coeffs()[2];
    Rational L(l);
    return -s2 * L * (L - 1) - f.alpha_exact() * L;
}

Rational eigenvalue_exact(const Family& f, int l) {
    if (l < 0) throw Error(ErrorKind::IndexViolation, "negative level index");
    if (!cutoff(f).admits(l)) {
        throw Error(ErrorKind::CutoffExceeded,
                    "level " + std::to_string(l) + " is not below the cutoff " + to_string(cutoff(f).value()));
    }
    return eigenvalue_formula(f, l);
}

double eigenvalue(const Family& f, int l) { return eigenvalue_exact(f, l).get_d(); }

double v_m(const Family& f, int m, double s) {
    if (!f.contains(s)) throw Error(ErrorKind::OutOfDomain, "s=" + std::to_string(s) + " outside the family interval");
    if (m == 0) return 0.0;
    const double sg = f.sigma(s);
    const double ds = f.dsigma(s);
    const double mm = m;
    return mm * (mm - 2.0) / 4.0 * ds * ds / sg + mm * f.tau(s) * ds / (2.0 * sg) - mm * (mm - 2.0) * f.d2sigma() / 2.0 -
           mm * f.dtau();
}

std::optional<Rational> weight_power_k(const Family& f) {
    const Rational& a = f.alpha_exact();
    const Rational& b = f.beta_exact();
    switch (f.kind()) {
    case Kind::constant: return std::nullopt;
    case Kind::linear:
        if (a == 0) return Rational(b - 1);
        return std::nullopt;
    case Kind::one_minus_s2:
        if (b == 0) return Rational(-a / 2 - 1);
        return std::nullopt;
    case Kind::s2_minus_one:
    case Kind::s2:
    case Kind::s2_plus_one:
        if (b == 0) return Rational(a / 2 - 1);
        return std::nullopt;
    }
    return std::nullopt;
}

Rational tilde_denominator(const Family& f, int m) {
    auto k = weight_power_k(f);
    if (!k) {
        throw Error(ErrorKind::NoWeightPower, "rho is not a power of sigma for this family");
    }
    Rational den = 2 * m + 2 * *k + 1;
    if (den == 0) throw Error(ErrorKind::DegenerateDenominator, "2m+2k+1 = 0");
    return den;
}

double tilde_shift(const Family& f, int m, double delta) {
    return delta / tilde_denominator(f, m).get_d();
}

Rational tilde_eigenvalue_exact(const Family& f, int m, const Rational& delta) {
    Rational den = tilde_denominator(f, m);
    if (!cutoff(f).admits(m + 1)) {
        throw Error(ErrorKind::CutoffExceeded, "shifted factorization needs m < cutoff - 1");
    }
    return eigenvalue_formula(f, m) - delta * delta / (den * den);
}

double tilde_eigenvalue(const Family& f, int m, double delta) {
    return tilde_eigenvalue_exact(f, m, to_rational(delta)).get_d();
}

}  // namespace hyperfact
