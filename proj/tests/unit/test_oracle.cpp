#include <cmath>

#include "doctest.h"
#include "hyperfact/oracle.hpp"

using namespace hyperfact;

TEST_CASE("sturm counts and bisection") {
    const std::vector<double> diag{2, 2, 2, 2, 2};
    const auto eig = tridiagonal_eigenvalues(diag, -1, 5);
    REQUIRE(eig.size() == 5);
    for (int k = 0; k < 5; ++k) {
        const double exact = 2 - 2 * std::cos((k + 1) * M_PI / 6);
        CHECK(eig[static_cast<std::size_t>(k)] == doctest::Approx(exact).epsilon(1e-12));
        CHECK(sturm_count(diag, -1, exact + 1e-6) == k + 1);
    }
    CHECK(sturm_count(diag, -1, -1.0) == 0);
    CHECK(sturm_count(diag, -1, 10.0) == 5);
}

TEST_CASE("harmonic oscillator fixture") {
    const auto s = fd_spectrum([](double x) { return x * x + 1; }, {-10, 10, 4000}, 4);
    REQUIRE(s.eigenvalues.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s.eigenvalues[static_cast<std::size_t>(k)] - (2.0 * k + 2)) < 1e-3);
}

TEST_CASE("particle in a box fixture") {
    const auto s = fd_spectrum([](double) { return 0.0; }, {0, M_PI, 2000}, 3);
    REQUIRE(s.eigenvalues.size() == 3);
    for (int k = 0; k < 3; ++k) {
        const double n = k + 1;
        CHECK(std::abs(s.eigenvalues[static_cast<std::size_t>(k)] - n * n) < 1e-3);
    }
}

TEST_CASE("constant shift moves every level") {
    const Grid g{-10, 10, 1000};
    const auto a = fd_spectrum([](double x) { return x * x; }, g, 5);
    const auto b = fd_spectrum([](double x) { return x * x + 3.25; }, g, 5);
    for (std::size_t k = 0; k < 5; ++k) CHECK(b.eigenvalues[k] - a.eigenvalues[k] == doctest::Approx(3.25).epsilon(1e-9));
}

TEST_CASE("discretization error scales as h squared") {
    const Grid g{-10, 10, 400};
    const auto s = fd_spectrum([](double x) { return x * x; }, g, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double exact = 2.0 * k + 1;
        const double ratio = (s.coarse[k] - exact) / (s.fine[k] - exact);
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
        CHECK(std::abs(s.eigenvalues[k] - exact) < std::abs(s.fine[k] - exact));
    }
}

TEST_CASE("oracle error kinds") {
    auto kind_of = [](auto&& fn) -> std::optional<ErrorKind> {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::nullopt;
    };
    CHECK(kind_of([] { fd_spectrum([](double) { return 0.0; }, {0, 1, 100}, 1); }) == ErrorKind::ParameterViolation);
    CHECK(kind_of([] { fd_spectrum([](double x) { return 1 / x; }, {-1, 1, 200}, 1); }) == ErrorKind::NonFinite);
    CHECK(kind_of([] { fd_spectrum([](double x) { return x * x; }, {-10, 10, 200}, 20, 1e-6); }) ==
          ErrorKind::GridTooCoarse);
}

TEST_CASE("spectral matching") {
    FdSpectrum s{{0, 1, 200}, {0.001, 2.0004, 3.9, 6.5}, {}, {}, 0};
    const auto r = match_spectrum(s, {2, 4, 6, 8}, 1);
    REQUIRE(r.matched.size() == 2);
    CHECK(r.matched[0].level == 1);
    CHECK(r.matched[0].residual == doctest::Approx(0.0004));
    CHECK(r.matched[1].level == 2);
    CHECK(r.missing == std::vector<double>{6, 8});
    CHECK(r.extras == std::vector<double>{0.001, 6.5});
    CHECK_FALSE(r.passed(1e-3));
}

TEST_CASE("oscillator partner spectrum at finite gamma") {
    const Family f = make_family(Kind::constant, -2.0, 0.0);
    const Deformation d = Deformation::make(f, 0, 2.0);
    const auto upper = verify_spectrum(d, Operator::upper, 4, Grid{-10, 10, 4000});
    CHECK(upper.passed(1e-3));
    CHECK(upper.extras.empty());
    const auto partner = verify_spectrum(d, Operator::partner, 4, Grid{-10, 10, 4000});
    CHECK(partner.passed(1e-3));
    REQUIRE(partner.extras.size() == 1);
    CHECK(std::abs(partner.extras[0] - d.lambda_m()) < 1e-3);
}

TEST_CASE("coulomb spectrum with automatic grid") {
    const Family f = make_family(Kind::linear, 0.0, 2.0);
    const Deformation d = Deformation::make(f, 0, INFINITY, std::nullopt, Rational(2));
    const auto r = verify_spectrum(d, Operator::upper, 2);
    REQUIRE(r.targets.size() == 2);
    CHECK(r.targets[0] == doctest::Approx(-4.0 / 25));
    CHECK(r.targets[1] == doctest::Approx(-4.0 / 49));
    CHECK(r.passed(1e-3));
}
