#include <cmath>

#include "doctest.h"
#include "hyperfact/catalog.hpp"
#include "hyperfact/quadrature.hpp"
#include "hyperfact/schrod.hpp"
#include "support.hpp"

using namespace hyperfact;

namespace {

std::vector<double> x_grid(Kind kind, int count) {
    double lo = 0, hi = 0;
    switch (kind) {
    case Kind::constant: lo = -3; hi = 3; break;
    case Kind::linear: lo = 0.3; hi = 5; break;
    case Kind::one_minus_s2: lo = 0.05; hi = M_PI - 0.05; break;
    case Kind::s2_minus_one: lo = 0.05; hi = 4; break;
    case Kind::s2: lo = -2; hi = 2; break;
    case Kind::s2_plus_one: lo = -3; hi = 3; break;
    }
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(lo + (hi - lo) * (i + 0.5) / count);
    return xs;
}

double five_point_second(const std::function<double(double)>& g, double x, double h) {
    return (-g(x + 2 * h) + 16 * g(x + h) - 30 * g(x) + 16 * g(x - h) - g(x - 2 * h)) / (12 * h * h);
}

double finite_gamma(const Family& f, int m) {
    const GammaRays r = admissible_gamma_range(f, m);
    return r.has_upper_ray() ? -r.lower_limit + 1.0 : -r.upper_limit - 1.0;
}

}  // namespace

TEST_CASE("coordinate maps") {
    for (const Family& f : testsupport::matrix()) {
        const CoordinateMap map(f.kind());
        for (double x : x_grid(f.kind(), 64)) {
            const double s = map.s_of_x(x);
            CHECK(f.contains(s));
            CHECK(std::abs(map.ds_dx(x) - map.sign() * f.kappa(s)) <= 1e-10 * std::max(1.0, f.kappa(s)));
            CHECK(map.x_of_s(s) == doctest::Approx(x).epsilon(1e-12));
            const Locus p = map.locus(f, x);
            if (std::isfinite(p.to_lower)) CHECK(p.to_lower == doctest::Approx(s - f.interval().lower).epsilon(1e-12));
        }
    }
    CHECK(CoordinateMap(Kind::one_minus_s2).sign() == -1);
    CHECK(CoordinateMap(Kind::s2).sign() == 1);
}

TEST_CASE("wavefunctions") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    for (double x : {-1.5, 0.0, 0.7, 2.2}) CHECK(wavefunction(h, 0, 0, x) == doctest::Approx(std::exp(-x * x / 2)).epsilon(1e-14));
    CHECK_THROWS_AS(wavefunction(make_family(Kind::linear, -1.0, 2.0), 1, 0, -1.0), Error);

    for (const Family& f : testsupport::matrix()) {
        const CoordinateMap map(f.kind());
        const Interval xd = map.x_domain();
        for (int m = 0; m <= 1; ++m) {
            for (int l = m; l <= m + 1 && cutoff(f).admits(l); ++l) {
                for (int lp = l; lp <= m + 1 && cutoff(f).admits(lp); ++lp) {
                    auto integrand = [&](double x) {
                        const double s = map.s_of_x(x);
                        if (!std::isfinite(s) || !f.contains(s)) return 0.0;
                        return wavefunction(f, l, m, x) * wavefunction(f, lp, m, x);
                    };
                    const double in_x = quad(integrand, xd.lower, xd.upper, 1e-11).value;
                    const Poly<double> p = assoc<Rational>(f, l, m).poly.convert<double>();
                    const Poly<double> q = assoc<Rational>(f, lp, m).poly.convert<double>();
                    const double in_s = weighted_inner(f, m, p, q);
                    INFO(tag(f.kind()), " l=", l, " l'=", lp, " m=", m);
                    CHECK(std::abs(in_x - in_s) <= 1e-8 * std::max(1.0, std::abs(in_s)));
                }
                const double far_lo = std::isinf(xd.lower) ? -60.0 : xd.lower + 1e-9;
                const double far_hi = std::isinf(xd.upper) ? 60.0 : xd.upper - 1e-9;
                CHECK(std::abs(wavefunction(f, l, m, far_hi)) < 1e-3);
                if (f.kind() != Kind::s2) CHECK(std::abs(wavefunction(f, l, m, far_lo)) < 1e-3);
            }
        }
    }
}

TEST_CASE("superpotential") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    Deformation inf = Deformation::make(h, 0, INFINITY);
    for (double x : {-2.0, 0.3, 1.7}) CHECK(superpotential(inf, x) == doctest::Approx(x).epsilon(1e-14));
    CHECK(superpotential(Deformation::make(h, 0, 2.0), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(superpotential(Deformation::make(make_family(Kind::linear, -1.0, 1.0), 0, INFINITY), 2.0) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(superpotential_tilde(inf, 0.0), Error);

    Family coulomb = make_family(Kind::linear, 0.0, 2.0);
    Deformation zero = Deformation::make(coulomb, 0, INFINITY, std::nullopt, Rational(0));
    Deformation two = Deformation::make(coulomb, 0, INFINITY, std::nullopt, Rational(2));
    for (double x : {0.5, 1.0, 3.0}) {
        CHECK(superpotential_tilde(zero, x) == superpotential(zero, x));
        CHECK(superpotential_tilde(two, x) - superpotential(two, x) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("potentials") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    Deformation inf = Deformation::make(h, 0, INFINITY);
    for (double x : {-2.0, 0.0, 1.1}) {
        const PotentialPair v = potentials(inf, x);
        CHECK(v.upper == doctest::Approx(x * x + 1).epsilon(1e-13));
        CHECK(v.partner == doctest::Approx(x * x - 1).epsilon(1e-13));
    }
    Family pt = make_family(Kind::one_minus_s2, -4.0, 1.0);
    Deformation d = Deformation::make(pt, 0, INFINITY);
    for (double x : x_grid(Kind::one_minus_s2, 16)) {
        const double csc = 1 / std::sin(x), cot = std::cos(x) / std::sin(x);
        const double ap = 1.5;
        const double expected = (ap * ap + ap + 0.25) * csc * csc - (2 * ap + 1) * 0.5 * cot * csc - ap * ap;
        CHECK(std::abs(potentials(d, x).upper - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    }

    for (const Family& f : testsupport::matrix()) {
        for (int m = 0; m <= 1 && cutoff(f).admits(m + 1); ++m) {
            for (double gamma : std::vector<double>{INFINITY, finite_gamma(f, m)}) {
                Deformation dd = Deformation::make(f, m, gamma);
                const int sign = CoordinateMap(f.kind()).sign();
                for (double x : x_grid(f.kind(), 24)) {
                    const PotentialPair v = potentials(dd, x);
                    const double dw = testsupport::richardson_derivative([&](double y) { return superpotential(dd, y); }, x, 1e-3);
                    const double diff = 2 * sign * superpotential_dx(dd, x).deriv;
                    CHECK(std::abs(v.upper - v.partner - diff) <= 1e-9 * std::max({1.0, std::abs(v.upper), std::abs(v.partner)}));
                    CHECK(std::abs(superpotential_dx(dd, x).deriv - dw) <= 1e-7 * std::max(1.0, std::abs(dw)));
                    const PotentialPair undeformed = potentials(Deformation::make(f, m, INFINITY), x);
                    CHECK(std::abs(v.upper - undeformed.upper) <= 1e-8 * std::max(1.0, std::abs(v.upper)));
                }
            }
        }
    }
}

TEST_CASE("schrodinger eigen relation") {
    for (const Family& f : testsupport::matrix()) {
        for (int m = 0; m <= 1 && cutoff(f).admits(m + 1); ++m) {
            Deformation d = Deformation::make(f, m, INFINITY);
            for (int l = m + 1; l <= m + 3 && cutoff(f).admits(l); ++l) {
                auto psi = [&](double x) { return wavefunction(f, l, m + 1, x); };
                const auto xs = x_grid(f.kind(), 20);
                double scale = 0.0, worst = 0.0;
                for (double x : xs) scale = std::max(scale, std::abs(psi(x)));
                const double lam = eigenvalue(f, l);
                for (double x : xs) {
                    const double r = -five_point_second(psi, x, 1e-3) + (potentials(d, x).upper - lam) * psi(x);
                    worst = std::max(worst, std::abs(r));
                }
                INFO(tag(f.kind()), " l=", l, " m=", m);
                CHECK(worst <= 1e-6 * (1 + std::abs(lam)) * scale);
            }
        }
    }
}

TEST_CASE("B operators") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    Deformation inf = Deformation::make(h, 0, INFINITY);
    for (double x : {-1.0, 0.4, 2.0}) CHECK(std::abs(B_apply(inf, x, wavefunction_dx(h, 0, 0, x), BSide::B)) <= 1e-15);

    for (const Family& f : testsupport::matrix()) {
        const CoordinateMap map(f.kind());
        for (int m = 0; m <= 1 && cutoff(f).admits(m + 1); ++m) {
            for (double gamma : std::vector<double>{INFINITY, finite_gamma(f, m)}) {
                Deformation d = Deformation::make(f, m, gamma);
                for (int l = m + 1; l <= m + 2 && cutoff(f).admits(l); ++l) {
                    auto low = assoc<Rational>(f, l, m);
                    auto high = assoc<Rational>(f, l, m + 1);
                    auto u = partner_eigenfunction(d, l);
                    double scale = 0.0, worst = 0.0;
                    const auto xs = x_grid(f.kind(), 16);
                    for (double x : xs) {
                        const double s = map.s_of_x(x);
                        const double root = std::exp(log_sqrt_kappa_rho(f, map.locus(f, x)));
                        const double Bx = B_apply(d, x, wavefunction_dx(f, l, m, x), BSide::B);
                        const double bs = root * b_apply(d, s, eval(low, s), BOperator::b);
                        CHECK(std::abs(Bx - bs) <= 1e-9 * std::max(1.0, std::abs(bs)));
                        const double Bpx = B_apply(d, x, wavefunction_dx(f, l, m + 1, x), BSide::B_plus);
                        const double pw = partner_wavefunction_dx(d, u, x).value;
                        CHECK(std::abs(Bpx - pw) <= 1e-9 * std::max(1.0, std::abs(pw)));
                        scale = std::max(scale, std::abs(pw));
                    }
                    for (double x : xs) {
                        auto w = [&](double y) { return partner_wavefunction_dx(d, u, y).value; };
                        const double d2 = testsupport::richardson_derivative(
                            [&](double y) { return partner_wavefunction_dx(d, u, y).deriv; }, x, 1e-3);
                        const double r = -d2 + (potentials(d, x).partner - u.eigenvalue()) * w(x);
                        worst = std::max(worst, std::abs(r));
                    }
                    INFO(tag(f.kind()), " m=", m, " gamma=", gamma, " l=", l);
                    CHECK(worst <= 1e-7 * std::max(1.0, scale));
                }
            }
        }
    }
}

TEST_CASE("catalog") {
    CHECK(catalog().size() == 10);
    CHECK(catalog_entry(5).name == "Morse type potential");
    CHECK_THROWS_AS(catalog_entry(11), Error);
    for (double x : {-1.0, 0.0, 0.8}) {
        const CatalogValue v = catalog_reference(5, -3.0, 2.0, 0, x);
        CHECK(v.lambda == 0.0);
        CHECK(v.V_upper == doctest::Approx(std::exp(-2 * x) - 3 * std::exp(-x) + 4).epsilon(1e-14));
    }
    const double I1 = std::sqrt(M_PI) / 2 * std::erf(1.0);
    CHECK(catalog_reference(1, -2.0, 0.0, 0, 1.0, 2.0).W == doctest::Approx(1.0 + std::exp(-1.0) / (2.0 + I1)).epsilon(1e-13));
    CHECK(catalog_reference(7, 0.0, 2.0, 1, 1.0, INFINITY, 2.0).lambda == doctest::Approx(-4.0 / 25.0));
    CHECK_THROWS_AS(catalog_reference(7, -1.0, 2.0, 0, 1.0), Error);
    CHECK_THROWS_AS(catalog_reference(3, -4.0, 1.0, 0, 1.0, INFINITY, 1.0), Error);
}

TEST_CASE("catalog agrees with the generic pipeline") {
    for (const CatalogEntry& e : catalog()) {
        const Family f = make_family(e.kind, e.alpha, e.beta);
        for (int m = 0; m <= 1 && cutoff(f).admits(m + 1); ++m) {
            std::optional<Rational> delta;
            if (e.shifted) delta = to_rational(e.delta);
            const GammaRays rays = Deformation::make(f, m, INFINITY, std::nullopt, delta).rays();
            const double gfin = rays.has_upper_ray() ? -rays.lower_limit + 0.5 : -rays.upper_limit - 0.5;
            for (double gamma : std::vector<double>{INFINITY, gfin}) {
                Deformation d = Deformation::make(f, m, gamma, std::nullopt, delta);
                double worst_v = 0.0, worst_w = 0.0;
                for (double x : x_grid(e.kind, 16)) {
                    const CatalogValue ref = catalog_reference(e.id, e.alpha, e.beta, m, x, gamma,
                                                               e.shifted ? std::optional<double>(e.delta) : std::nullopt);
                    worst_w = std::max(worst_w, std::abs(superpotential_dx(d, x).value - ref.W));
                    if (std::isinf(gamma) || !e.shifted) worst_v = std::max(worst_v, std::abs(potentials(d, x).upper - ref.V_upper));
                    CHECK(d.lambda_m_shifted() == doctest::Approx(ref.lambda).epsilon(1e-14));
                }
                INFO(e.name, " m=", m, " gamma=", gamma);
                CHECK(worst_w <= 1e-10);
                CHECK(worst_v <= 1e-10);
            }
        }
    }
}
