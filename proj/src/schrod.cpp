#include "hyperfact/schrod.hpp"

#include <cmath>

namespace hyperfact {

namespace {

constexpr double kInf = INFINITY;

struct Frame {
    Locus p;
    double sigma, kappa, dkappa;
    // √(κρ)
    double log_root;
};

Frame frame(const Family& f, const CoordinateMap& map, double x) {
    if (!map.contains(x)) throw Error(ErrorKind::OutOfDomain, "x=" + std::to_string(x) + " outside the x domain");
    const Locus p = map.locus(f, x);
    const double ls = f.log_sigma(p);
    const double sigma = std::exp(ls);
    const double kappa = std::exp(0.5 * ls);
    return {p, sigma, kappa, f.dsigma(p.s) / (2.0 * kappa), log_sqrt_kappa_rho(f, p)};
}

// (√(κρ))' / √(κρ) = κ'/(2κ) + (τ − σ')/(2σ) = (2τ − σ')/(4σ)
double root_log_derivative(const Family& f, const Frame& fr) {
    return (2.0 * f.tau(fr.p.s) - f.dsigma(fr.p.s)) / (4.0 * fr.sigma);
}

}  // namespace

CoordinateMap::CoordinateMap(Kind kind) : kind_(kind), domain_{-kInf, kInf}, sign_(1) {
    switch (kind) {
    case Kind::constant:
    case Kind::s2:
    case Kind::s2_plus_one: break;
    case Kind::linear:
    case Kind::s2_minus_one: domain_ = {0.0, kInf}; break;
    case Kind::one_minus_s2:
        domain_ = {0.0, M_PI};
        sign_ = -1;
        break;
    }
}

double CoordinateMap::s_of_x(double x) const {
    switch (kind_) {
    case Kind::constant: return x;
    case Kind::linear: return x * x / 4.0;
    case Kind::one_minus_s2: return std::cos(x);
    case Kind::s2_minus_one: return std::cosh(x);
    case Kind::s2: return std::exp(x);
    case Kind::s2_plus_one: return std::sinh(x);
    }
    return x;
}

double CoordinateMap::x_of_s(double s) const {
    switch (kind_) {
    case Kind::constant: return s;
    case Kind::linear: return 2.0 * std::sqrt(s);
    case Kind::one_minus_s2: return std::acos(s);
    case Kind::s2_minus_one: return std::acosh(s);
    case Kind::s2: return std::log(s);
    case Kind::s2_plus_one: return std::asinh(s);
    }
    return s;
}

double CoordinateMap::ds_dx(double x) const {
    switch (kind_) {
    case Kind::constant: return 1.0;
    case Kind::linear: return x / 2.0;
    case Kind::one_minus_s2: return -std::sin(x);
    case Kind::s2_minus_one: return std::sinh(x);
    case Kind::s2: return std::exp(x);
    case Kind::s2_plus_one: return std::cosh(x);
    }
    return 1.0;
}

Locus CoordinateMap::locus(const Family& f, double x) const {
    const double s = s_of_x(x);
    switch (kind_) {
    case Kind::constant:
    case Kind::s2_plus_one: return f.at(s);
    case Kind::linear:
    case Kind::s2: return {s, s, kInf};
    case Kind::one_minus_s2: {
        const double c = std::cos(x / 2.0), h = std::sin(x / 2.0);
        return {s, 2.0 * c * c, 2.0 * h * h};
    }
    case Kind::s2_minus_one: {
        const double h = std::sinh(x / 2.0);
        return {s, 2.0 * h * h, kInf};
    }
    }
    return f.at(s);
}

double log_sqrt_kappa_rho(const Family& f, const Locus& p) { return 0.5 * (0.5 * f.log_sigma(p) + f.log_weight(p)); }

DifferentiableValue wavefunction_dx(const Family& f, int l, int m, double x) {
    const AssociatedFunction<Rational> af = assoc<Rational>(f, l, m);
    const Poly<double> p = af.poly.convert<double>();
    const CoordinateMap map(f.kind());
    const Frame fr = frame(f, map, x);
    const double s = fr.p.s;
    const double e = std::exp(fr.log_root + 0.5 * m * f.log_sigma(fr.p));
    const double pv = p(s);
    const double dpds = p.derivative()(s) + pv * (m * fr.dkappa / fr.kappa + root_log_derivative(f, fr));
    return {e * pv, map.sign() * fr.kappa * e * dpds};
}

double wavefunction(const Family& f, int l, int m, double x) { return wavefunction_dx(f, l, m, x).value; }

DifferentiableValue superpotential_dx(const Deformation& d, double x) {
    const Family& f = d.family();
    const CoordinateMap map(f.kind());
    const Frame fr = frame(f, map, x);
    const double s = fr.p.s;
    const double k = fr.kappa, dk = fr.dkappa;
    const double d2k = f.d2sigma() / (2.0 * k) - f.dsigma(s) * f.dsigma(s) / (4.0 * k * k * k);
    const double tau = f.tau(s);
    const double half = d.m() - 0.5;
    const DifferentiableValue D = d.deformation_term(s);
    const double w = -tau / (2.0 * k) - half * dk + k * D.value + d.shift();
    const double dw = -(f.dtau() * k - tau * dk) / (2.0 * k * k) - half * d2k + dk * D.value + k * D.deriv;
    return {w, map.sign() * k * dw};
}

double superpotential(const Deformation& d, double x) { return superpotential_dx(d, x).value - d.shift(); }

double superpotential_tilde(const Deformation& d, double x) {
    if (!d.delta()) throw Error(ErrorKind::NoWeightPower, "the deformation carries no shift delta");
    return superpotential_dx(d, x).value;
}

PotentialPair potentials(const Deformation& d, double x) {
    const DifferentiableValue w = superpotential_dx(d, x);
    const double sq = w.value * w.value + d.lambda_m_shifted();
    const double slope = CoordinateMap(d.family().kind()).sign() * w.deriv;
    return {sq + slope, sq - slope};
}

double B_apply(const Deformation& d, double x, const DifferentiableValue& psi, BSide which) {
    const int sign = CoordinateMap(d.family().kind()).sign();
    const double w = superpotential_dx(d, x).value;
    if (which == BSide::B) return sign * psi.deriv + w * psi.value;
    return -sign * psi.deriv + w * psi.value;
}

DifferentiableValue partner_wavefunction_dx(const Deformation& d, const PartnerEigenfunction& u, double x) {
    const Family& f = d.family();
    const CoordinateMap map(f.kind());
    const Frame fr = frame(f, map, x);
    const double e = std::exp(fr.log_root);
    const DifferentiableValue uv = u(fr.p.s);
    return {e * uv.value, map.sign() * fr.kappa * e * (uv.deriv + root_log_derivative(f, fr) * uv.value)};
}

}  // namespace hyperfact
