#include <cmath>

#include "doctest.h"
#include "hyperfact/ladder.hpp"
#include "support.hpp"

using namespace hyperfact;

namespace {
Poly<Rational> rpoly(std::vector<Rational> c) { return Poly<Rational>(std::move(c)); }

int top_level(const Family& f, int cap) {
    int l = 0;
    while (l < cap && cutoff(f).admits(l + 1)) ++l;
    return l;
}
}  // namespace

TEST_CASE("raising") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    auto ctx = LadderContext::make(h, 0);
    auto r = raise_op(ctx, assoc<Rational>(h, 2, 0));
    CHECK(r.m == 1);
    CHECK(r.poly == rpoly({0, 1}));
    auto ctx2 = LadderContext::make(h, 2);
    CHECK(raise_op(ctx2, assoc<Rational>(h, 2, 2)).poly.is_zero());

    for (const Family& f : testsupport::matrix()) {
        int l = top_level(f, 6);
        if (l < 2 || !cutoff(f).admits(2)) continue;
        auto once = raise_op(LadderContext::make(f, 0), assoc<Rational>(f, l, 0));
        auto twice = raise_op(LadderContext::make(f, 1), once);
        CHECK(twice.poly == assoc<Rational>(f, l, 2).poly);
    }
}

TEST_CASE("lowering") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    auto ctx = LadderContext::make(h, 0);
    auto r = lower_op(ctx, assoc<Rational>(h, 2, 1));
    CHECK(r.poly == phi<Rational>(h, 2) * Rational(4));

    for (const Family& f : testsupport::matrix()) {
        int top = top_level(f, 6);
        for (int m = 0; m < top; ++m) {
            auto ctxm = LadderContext::make(f, m);
            for (int l = m + 1; l <= top; ++l) {
                auto back = lower_op(ctxm, raise_op(ctxm, assoc<Rational>(f, l, m)));
                Rational factor = eigenvalue_formula(f, l) - eigenvalue_formula(f, m);
                CHECK(back.poly == assoc<Rational>(f, l, m).poly * factor);
            }
        }
    }
}

TEST_CASE("context mismatches") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    Family other = make_family(Kind::constant, -3.0, 0.0);
    auto ctx = LadderContext::make(h, 1);
    try {
        raise_op(ctx, assoc<Rational>(h, 3, 0));
        FAIL("expected ContextMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ContextMismatch);
    }
    CHECK_THROWS_AS(raise_op(ctx, assoc<Rational>(other, 3, 1)), Error);
    CHECK_THROWS_AS(lower_op(ctx, assoc<Rational>(h, 3, 1)), Error);
    CHECK_THROWS_AS(LadderContext::make(make_family(Kind::s2, -1.0, 2.0), 0), Error);
}

TEST_CASE("non-polynomial input to lowering is a divisibility failure") {
    Family j = make_family(Kind::one_minus_s2, -4.0, 1.0);
    auto ctx = LadderContext::make(j, 0);
    // κ^1 · 1 is fine, but a function of the wrong κ parity is not
    AssociatedFunction<Rational> odd{j, 2, 1, rpoly({1})};
    CHECK_NOTHROW(lower_op(ctx, odd));
    KFunction<Rational> mixed = KFunction<Rational>::term(j, 1, rpoly({1})) + KFunction<Rational>::term(j, 0, rpoly({1}));
    try {
        mixed.reshape(0);
        FAIL("expected DivisibilityFailure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivisibilityFailure);
    }
}

TEST_CASE("chain reconstruction from kappa^l") {
    for (const Family& f : testsupport::matrix()) {
        int top = top_level(f, 6);
        for (int m = 0; m <= top; ++m) CHECK(lowering_chain<Rational>(f, top, m).poly == assoc<Rational>(f, top, m).poly);
    }
}

TEST_CASE("hamiltonian eigen relation") {
    for (const Family& f : testsupport::matrix()) {
        int top = top_level(f, 6);
        for (int l = 0; l <= top; ++l)
            for (int m = 0; m <= l; ++m) {
                auto af = assoc<Rational>(f, l, m);
                LadderContext ctx = cutoff(f).admits(m + 1) ? LadderContext::make(f, m) : LadderContext::make(f, 0);
                if (ctx.m() != m) continue;
                CHECK(hamiltonian_apply(ctx, af).poly == af.poly * eigenvalue_formula(f, l));
            }
    }
    Family l = make_family(Kind::linear, -1.0, 2.0);
    auto af = assoc<Rational>(l, 3, 1);
    CHECK(hamiltonian_apply(LadderContext::make(l, 1), af).poly == af.poly * Rational(3));
    Family h = make_family(Kind::constant, -2.0, 0.0);
    CHECK(hamiltonian_apply(LadderContext::make(h, 0), assoc<Rational>(h, 0, 0)).poly.is_zero());
}

TEST_CASE("factorization and intertwining identities") {
    for (const Family& f : testsupport::matrix()) {
        for (int m : {0, 1}) {
            if (!cutoff(f).admits(m + 1)) continue;
            int lmax = top_level(f, 6);
            auto ctx = LadderContext::make(f, m);
            IdentityReport exact = check_identities<Rational>(ctx, lmax);
            CHECK(exact.passed());
            CHECK(exact.max_residual() == 0.0);
            CHECK(exact.entries.size() > 20);
            IdentityReport flt = check_identities<double>(ctx, lmax);
            INFO(tag(f.kind()), " m=", m, " float residual ", flt.max_residual());
            CHECK(flt.max_residual() <= 1e-12);
        }
    }
}

TEST_CASE("identity (i) at the m = l edge") {
    Family h = make_family(Kind::constant, -2.0, 0.0);
    auto ctx = LadderContext::make(h, 2);
    auto af = assoc<Rational>(h, 2, 2);
    auto g = as_kfunction(af);
    auto lhs = apply_a_plus(h, 2, apply_a(h, 2, g));
    CHECK(lhs.structurally_zero());
}

TEST_CASE("wrong H constant is detected") {
    // H_{m+1} with the constant -alpha*m instead of -alpha*(m+1) breaks a a^+ = H_{m+1} - lambda_m
    Family h = make_family(Kind::constant, -2.0, 0.0);
    const int m = 1;
    auto g = KFunction<Rational>::term(h, m + 1, rpoly({1, 2, 3}));
    auto lhs = apply_a(h, m, apply_a_plus(h, m, g));
    auto good = apply_H(h, m + 1, g) - g * eigenvalue_formula(h, m);
    CHECK(kfunction_residual(lhs, good) == 0.0);
    auto typo = good + g * Rational(-2);  // shifts the constant by alpha
    CHECK(kfunction_residual(lhs, typo) > 0.0);
}

TEST_CASE("shifted factorization") {
    Family c = make_family(Kind::linear, 0.0, 2.0);
    auto ctx = LadderContext::make_tilde(c, 0, Rational(2));
    CHECK(ctx.shift() == Rational(2, 3));
    IdentityReport rep = check_identities<Rational>(ctx, 4);
    CHECK(rep.passed());
    bool has_tilde = false;
    for (const auto& e : rep.entries) has_tilde |= e.identity.rfind("tilde", 0) == 0;
    CHECK(has_tilde);
    CHECK(tilde_eigenvalue_exact(c, 0, Rational(2)) == Rational(-4, 9));

    Family j = make_family(Kind::one_minus_s2, -4.0, 0.0);
    for (int m : {0, 1, 2}) {
        auto t = LadderContext::make_tilde(j, m, Rational(3, 2));
        CHECK(check_identities<Rational>(t, 5).passed());
        CHECK(check_identities<double>(t, 5).passed());
    }
    Family e = make_family(Kind::s2_minus_one, -6.0, 0.0);
    CHECK(check_identities<Rational>(LadderContext::make_tilde(e, 1, Rational(5)), 2).passed());
}

TEST_CASE("shift zero reduces to the plain ladder") {
    Family j = make_family(Kind::one_minus_s2, -4.0, 0.0);
    auto t = LadderContext::make_tilde(j, 1, Rational(0));
    auto plain = LadderContext::make(j, 1);
    auto af = assoc<Rational>(j, 3, 1);
    TildeImage<Rational> img = tilde_apply(t, af, Ladder::raise);
    CHECK(img.shift == 0);
    CHECK(img.ladder.poly == raise_op(plain, af).poly);
    auto af2 = assoc<Rational>(j, 3, 2);
    CHECK(tilde_apply(t, af2, Ladder::lower).ladder.poly == lower_op(plain, af2).poly);
    CHECK_THROWS_AS(tilde_apply(plain, af, Ladder::raise), Error);
}

TEST_CASE("shifted hamiltonian differs by -delta kappa'") {
    Family j = make_family(Kind::one_minus_s2, -4.0, 0.0);
    const Rational delta(3, 2);
    auto one = KFunction<Rational>::term(j, 0, rpoly({1}));
    auto diff = apply_dkappa(j, one) * Rational(-delta);
    for (double s : testsupport::window_points(j, 16)) {
        double expected = -delta.get_d() * j.dsigma(s) / (2 * std::sqrt(j.sigma(s)));
        CHECK(diff(s) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK_THROWS_AS(LadderContext::make_tilde(make_family(Kind::constant, -2.0, 0.0), 0, Rational(1)), Error);
    // 2m+2k+1 = 0: sigma = 1-s^2 with k = -alpha/2-1 = -1/2 at alpha = -1, m = 0
    try {
        LadderContext::make_tilde(make_family(Kind::one_minus_s2, -1.0, 0.0), 0, Rational(1));
        FAIL("expected DegenerateDenominator");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateDenominator);
    }
}

TEST_CASE("three-term recurrence at random points") {
    for (const Family& f : testsupport::matrix()) {
        int top = top_level(f, 6);
        for (int l = 1; l <= top; ++l)
            for (int m = 1; m <= l; ++m)
                for (double s : testsupport::window_points(f, 32, 19)) CHECK(recurrence_residual(f, l, m, s) <= 1e-10);
    }
}
