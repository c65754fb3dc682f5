#include <cmath>

#include "doctest.h"
#include "hyperfact/family.hpp"
#include "support.hpp"

using namespace hyperfact;

TEST_CASE("make_family builds the canonical families") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    CHECK(h.interval().lower == -INFINITY);
    CHECK(h.interval().upper == INFINITY);
    CHECK(h.weight(1.5) == doctest::Approx(std::exp(-2.25)).epsilon(1e-14));

    Family l = make_family(Kind::linear, -1.0, 1.0);
    CHECK(l.interval().lower == 0.0);
    CHECK(l.weight(3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
}

TEST_CASE("make_family rejects violated constraints") {
    try {
        make_family(Kind::one_minus_s2, 1.0, 0.0);
        FAIL("expected ParameterViolation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParameterViolation);
        CHECK(std::string(e.what()).find("alpha < beta < -alpha") != std::string::npos);
    }
    CHECK_THROWS_AS(make_family(Kind::constant, 1.0, 0.0), Error);
    CHECK_THROWS_AS(make_family(Kind::linear, -1.0, -1.0), Error);
    CHECK_THROWS_AS(make_family(Kind::s2_minus_one, -9.0, 1.0), Error);
    CHECK_THROWS_AS(make_family(Kind::s2, -1.0, -2.0), Error);
    CHECK_THROWS_AS(make_family(Kind::s2_plus_one, 0.5, 1.0), Error);
}

TEST_CASE("weight-power subfamilies are admitted") {
    Family c = make_family(Kind::linear, 0.0, 2.0);
    CHECK_FALSE(c.satisfies_table1());
    CHECK(weight_power_k(c).value() == 1);
    Family e = make_family(Kind::s2_minus_one, -4.0, 0.0);
    CHECK(weight_power_k(e).value() == -3);
}

TEST_CASE("eigenvalues") {
    CHECK(eigenvalue(make_family(Kind::constant, -2.0, 0.0), 3) == 6.0);
    CHECK(eigenvalue(make_family(Kind::one_minus_s2, -6.0, 0.0), 2) == 14.0);
    for (const Family& f : testsupport::matrix()) CHECK(eigenvalue(f, 0) == 0.0);
    Family s2 = make_family(Kind::s2, -1.0, 2.0);
    CHECK(eigenvalue(s2, 0) == 0.0);
    CHECK_THROWS_AS(eigenvalue(s2, 1), Error);
}

TEST_CASE("weight examples") {
    CHECK(make_family(Kind::constant, -2.0, 0.0).weight(0.0) == 1.0);
    CHECK(make_family(Kind::linear, -1.0, 3.0).weight(2.0) == doctest::Approx(4.0 * std::exp(-2.0)));
    CHECK(make_family(Kind::s2_plus_one, -4.0, 1.0).weight(0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(make_family(Kind::linear, -1.0, 3.0).weight(-1.0), Error);
}

TEST_CASE("cutoff") {
    CHECK(cutoff(make_family(Kind::constant, -2.0, 0.0)).is_infinite());
    CHECK(cutoff(Family::unchecked(Kind::s2_minus_one, -6, 1)).as_double() == 3.5);
    Cutoff c = cutoff(make_family(Kind::s2, -1.0, 2.0));
    CHECK(c.as_double() == 1.0);
    CHECK(c.admits(0));
    CHECK_FALSE(c.admits(1));
}

TEST_CASE("v_m examples") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    CHECK(v_m(h, 1, 0.7) == doctest::Approx(2.0));
    CHECK(v_m(make_family(Kind::linear, -1.0, 2.0), 1, 1.0) == doctest::Approx(1.25));
    for (const Family& f : testsupport::matrix())
        for (double s : testsupport::window_points(f, 10)) CHECK(v_m(f, 0, s) == 0.0);
}

TEST_CASE("weight power and tilde eigenvalue") {
    CHECK(weight_power_k(make_family(Kind::linear, 0.0, 3.0)).value() == 2);
    CHECK(weight_power_k(make_family(Kind::one_minus_s2, -4.0, 0.0)).value() == 1);
    CHECK_FALSE(weight_power_k(make_family(Kind::constant, -2.0, 0.0)).has_value());

    CHECK(tilde_eigenvalue_exact(make_family(Kind::linear, 0.0, 2.0), 0, Rational(2)) == Rational(-4, 9));
    CHECK(tilde_eigenvalue(make_family(Kind::one_minus_s2, -4.0, 0.0), 1, 1.0) == doctest::Approx(3.96));
    Family f = make_family(Kind::one_minus_s2, -4.0, 0.0);
    CHECK(tilde_eigenvalue(f, 2, 0.0) == eigenvalue(f, 2));
    try {
        tilde_eigenvalue(make_family(Kind::constant, -2.0, 0.0), 0, 1.0);
        FAIL("expected NoWeightPower");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoWeightPower);
    }
}

TEST_CASE("eigenvalues increase below the cutoff") {
    for (const Family& f : testsupport::matrix()) {
        Cutoff c = cutoff(f);
        for (int l = 0; l < 12 && c.admits(l + 1); ++l) CHECK(eigenvalue(f, l + 1) > eigenvalue(f, l));
    }
}

TEST_CASE("log-derivative of sigma*rho equals tau/sigma") {
    for (const Family& f : testsupport::matrix()) {
        for (double s : testsupport::window_points(f, 100, 11)) {
            auto g = [&](double x) { return std::log(f.sigma(x)) + f.log_weight(x); };
            double h = 1e-3 * std::min({1.0, s - f.interval().lower, f.interval().upper - s});
            double lhs = testsupport::richardson_derivative(g, s, h);
            double rhs = f.tau(s) / f.sigma(s);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(rhs)));
        }
    }
}

TEST_CASE("sigma*rho decays toward both endpoints") {
    for (const Family& f : testsupport::matrix()) {
        const Interval iv = f.interval();
        const double s0 = f.base_point();
        for (double end : {iv.lower, iv.upper}) {
            double prev = INFINITY;
            for (int k = 10; k <= 40; ++k) {
                double s = std::isinf(end) ? s0 + (end > 0 ? 1 : -1) * std::pow(2.0, k) / 1024.0
                                           : end + (s0 - end) * std::pow(2.0, -k);
                double v = std::log(f.sigma(s)) + f.log_weight(s);
                CHECK(v < prev);
                prev = v;
            }
        }
    }
}
