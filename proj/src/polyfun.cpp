#include "hyperfact/polyfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hyperfact/quadrature.hpp"

namespace hyperfact {

namespace {

double hermite(int n, double x) {
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        double p2 = 2.0 * x * p1 - 2.0 * k * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double laguerre(int n, double p, double x) {
    double l0 = 1.0;
    if (n == 0) return l0;
    double l1 = 1.0 + p - x;
    for (int k = 1; k < n; ++k) {
        double l2 = ((2.0 * k + 1.0 + p - x) * l1 - (k + p) * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

// s^n L_n^{(p)}(b/s), kept finite as s -> 0 and for b = 0.
double laguerre_reversed(int n, double p, double b, double s) {
    double n0 = 1.0;
    if (n == 0) return n0;
    double n1 = (1.0 + p) * s - b;
    for (int k = 1; k < n; ++k) {
        double n2 = (((2.0 * k + 1.0 + p) * s - b) * n1 - (k + p) * s * s * n0) / (k + 1.0);
        n0 = n1;
        n1 = n2;
    }
    return n1;
}

template <class C>
C jacobi(int n, C a, C b, C x) {
    C p0(1.0);
    if (n == 0) return p0;
    C p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double kd = k;
        C ab = a + b;
        C c1 = 2.0 * kd * (kd + ab) * (2.0 * kd + ab - 2.0);
        C c2 = (2.0 * kd + ab - 1.0) * ((2.0 * kd + ab) * (2.0 * kd + ab - 2.0) * x + a * a - b * b);
        C c3 = 2.0 * (kd + a - 1.0) * (kd + b - 1.0) * (2.0 * kd + ab);
        if (std::abs(c1) == 0.0) {
            throw Error(ErrorKind::NotProportional, "Jacobi recurrence degenerates at n=" + std::to_string(k));
        }
        C p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::vector<double> crosscheck_points(const Family& f) {
    double lo = 0, hi = 0;
    switch (f.kind()) {
        case Kind::constant: lo = -2.0; hi = 2.0; break;
        case Kind::linear: lo = 0.2; hi = 4.0; break;
        case Kind::one_minus_s2: lo = -0.9; hi = 0.9; break;
        case Kind::s2_minus_one: lo = 1.1; hi = 5.0; break;
        case Kind::s2: lo = 0.2; hi = 4.0; break;
        case Kind::s2_plus_one: lo = -2.0; hi = 2.0; break;
    }
    std::vector<double> pts;
    // slightly irrational spacing keeps clear of symmetric zeros
    for (int i = 0; i < 16; ++i) pts.push_back(lo + (hi - lo) * (i + 0.37) / 16.0);
    return pts;
}

double logsum_integrand(const Family& f, int m, const Poly<double>& p, const Poly<double>& q, const Locus& at) {
    const double s = at.s;
    const double pv = p(s);
    const double qv = q(s);
    if (pv == 0.0 || qv == 0.0) return 0.0;
    const double sign = (pv > 0) == (qv > 0) ? 1.0 : -1.0;
    const double lg = f.log_weighted_sigma_power(m, at) + p.log_abs(s) + q.log_abs(s);
    return sign * std::exp(lg);
}

}  // namespace

double classical_value(const Family& f, int l, double s) {
    const double a = f.alpha();
    const double b = f.beta();
    switch (f.kind()) {
        case Kind::constant:
            return hermite(l, std::sqrt(-a / 2.0) * s - b / std::sqrt(-2.0 * a));
        case Kind::linear:
            return laguerre(l, b - 1.0, -a * s);
        case Kind::one_minus_s2:
            return jacobi<double>(l, -(a + b) / 2.0 - 1.0, (-a + b) / 2.0 - 1.0, s);
        case Kind::s2_minus_one:
            return jacobi<double>(l, (a - b) / 2.0 - 1.0, (a + b) / 2.0 - 1.0, -s);
        case Kind::s2:
            return laguerre_reversed(l, 1.0 - a - 2.0 * l, b, s);
        case Kind::s2_plus_one: {
            using C = std::complex<double>;
            const C i(0.0, 1.0);
            C p = jacobi<C>(l, C(a / 2.0 - 1.0, b / 2.0), C(a / 2.0 - 1.0, -b / 2.0), i * s);
            C scale = std::pow(i, l);
            return (scale * p).real();
        }
    }
    return 0.0;
}

double classical_crosscheck(const Family& f, int l) {
    const Poly<double> p = phi<Rational>(f, l).convert<double>();
    std::vector<double> phis, cls;
    for (double s : crosscheck_points(f)) {
        phis.push_back(p(s));
        cls.push_back(classical_value(f, l, s));
    }
    double num = 0.0, den = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        num += cls[i] * phis[i];
        den += phis[i] * phis[i];
        scale = std::max(scale, std::abs(cls[i]));
    }
    if (den == 0.0 || scale == 0.0) throw Error(ErrorKind::NotProportional, "vanishing samples");
    const double ratio = num / den;
    double dev = 0.0;
    for (std::size_t i = 0; i < phis.size(); ++i) dev = std::max(dev, std::abs(cls[i] - ratio * phis[i]));
    if (dev > 1e-8 * scale) {
        throw Error(ErrorKind::NotProportional, "classical polynomial deviates from Phi_" + std::to_string(l) +
                                                    " by " + std::to_string(dev / scale) + " relative");
    }
    return ratio;
}

double integrate_interval(const Family& f, const std::function<double(const Locus&)>& g, double tol) {
    const Interval iv = f.interval();
    const double s0 = f.base_point();
    double lower = 0.0, upper = 0.0;
    if (std::isinf(iv.lower)) lower = quad([&](double x) { return g(f.at(s0 - x)); }, 0.0, INFINITY, tol).value;
    else lower = quad([&](double x) { return g(f.near_lower(x)); }, 0.0, s0 - iv.lower, tol).value;
    if (std::isinf(iv.upper)) upper = quad([&](double x) { return g(f.at(s0 + x)); }, 0.0, INFINITY, tol).value;
    else upper = quad([&](double x) { return g(f.near_upper(x)); }, 0.0, iv.upper - s0, tol).value;
    return lower + upper;
}

double weighted_inner(const Family& f, int m, const Poly<double>& p, const Poly<double>& q, double tol) {
    try {
        return integrate_interval(f, [&](const Locus& at) { return logsum_integrand(f, m, p, q, at); }, tol);
    } catch (const Error& e) {
        throw Error(ErrorKind::QuadratureFailure, std::string("weighted inner product: ") + e.what());
    }
}

double norm(const Family& f, int l, int m) {
    const AssociatedFunction<Rational> af = assoc<Rational>(f, l, m);
    const Poly<double> p = af.poly.convert<double>();
    return std::sqrt(weighted_inner(f, m, p, p));
}

std::vector<std::vector<double>> gram(const Family& f, int m, int lmax) {
    if (m < 0 || m > lmax) throw Error(ErrorKind::IndexViolation, "need 0 <= m <= lmax");
    std::vector<Poly<double>> polys;
    for (int l = m; l <= lmax; ++l) polys.push_back(assoc<Rational>(f, l, m).poly.convert<double>());
    const std::size_t n = polys.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = weighted_inner(f, m, polys[i], polys[j]);
    return g;
}

}  // namespace hyperfact
