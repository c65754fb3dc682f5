#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hyperfact/error.hpp"
#include "hyperfact/quadrature.hpp"

using namespace hyperfact;

TEST_CASE("gaussian over the whole line") {
    QuadratureResult r = quad([](double s) { return std::exp(-s * s); }, -INFINITY, INFINITY);
    CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) <= 1e-12);
    CHECK(r.error_estimate <= 1e-10);
}

TEST_CASE("integrable endpoint singularity") {
    QuadratureResult r = quad([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 2.0) <= 1e-10);
}

TEST_CASE("zero integrand and degenerate limits") {
    CHECK(quad([](double) { return 0.0; }, -1.0, 3.0).value == 0.0);
    CHECK(quad([](double s) { return s; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("reversed limits negate") {
    double fwd = quad([](double s) { return std::exp(s); }, 0.0, 1.0).value;
    double back = quad([](double s) { return std::exp(s); }, 1.0, 0.0).value;
    CHECK(fwd == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    CHECK(back == -fwd);
}

TEST_CASE("half line with exponential decay") {
    double v = quad([](double s) { return s * s * std::exp(-s); }, 0.0, INFINITY).value;
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    double w = quad([](double s) { return std::exp(s); }, -INFINITY, 0.0).value;
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-finite samples are reported") {
    try {
        quad([](double s) { return s > 0.5 ? NAN : 1.0; }, 0.0, 1.0);
        FAIL("expected NonFinite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFinite);
    }
}

TEST_CASE("refinement reduces the error at least tenfold on smooth integrands") {
    // Compare fixed-level errors via the tolerance knob: a looser tolerance stops
    // at a lower level; each further level must gain an order of magnitude.
    auto f = [](double s) { return 1.0 / (1.0 + s * s); };
    const double exact = std::numbers::pi / 2.0;
    double prev_err = INFINITY;
    int prev_level = -1;
    for (double tol : {1e-2, 1e-4, 1e-6, 1e-8}) {
        QuadratureResult r = quad(f, 0.0, 1.0 / 0.0, tol);
        double err = std::abs(r.value - exact);
        if (r.level > prev_level && prev_level >= 0 && prev_err > 1e-14) CHECK(err <= prev_err / 10.0);
        prev_err = err;
        prev_level = r.level;
    }
}

TEST_CASE("tail limits") {
    TailLimit g = tail_limit([](double x) { return std::exp(-x * x); }, INFINITY);
    CHECK(g.finite);
    CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));

    TailLimit lin = tail_limit([](double x) { return 1.0 + x; }, INFINITY);
    CHECK_FALSE(lin.finite);
    CHECK(lin.value == INFINITY);
    TailLimit near0 = tail_limit([](double x) { return x; }, 1.0);
    CHECK(near0.finite);
    CHECK(near0.value == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_FALSE(tail_limit([](double x) { return 1.0 / x; }, 1.0).finite);
    CHECK_FALSE(tail_limit([](double x) { return 1.0 / (1.0 + x); }, INFINITY).finite);
    CHECK_FALSE(tail_limit([](double x) { return std::pow(x, -1.5); }, 1.0).finite);

    TailLimit slow = tail_limit([](double x) { return std::pow(x, -0.9); }, 1.0);
    CHECK(slow.finite);
    CHECK(slow.value == doctest::Approx(10.0).epsilon(1e-8));
    TailLimit slow_inf = tail_limit([](double x) { return std::pow(1.0 + x, -1.2); }, INFINITY);
    CHECK(slow_inf.finite);
    CHECK(slow_inf.value == doctest::Approx(5.0).epsilon(1e-6));
}
