#include <cmath>

#include "doctest.h"
#include "hyperfact/io.hpp"
#include "hyperfact/verify.hpp"

using namespace hyperfact;

TEST_CASE("every suite passes on the default matrix") {
    for (const SuiteReport& r : run_suites({all_suites.begin(), all_suites.end()})) {
        INFO(suite_name(r.suite));
        CHECK(r.passed());
        CHECK_FALSE(r.checks.empty());
        CHECK(r.failures().empty());
    }
}

TEST_CASE("suite names") {
    for (Suite s : all_suites) CHECK(suite_from_name(suite_name(s)) == s);
    CHECK_THROWS_AS(suite_from_name("everything"), Error);
}

TEST_CASE("default matrix and level limits") {
    const auto m = default_test_matrix();
    REQUIRE(m.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(m[i].kind() == all_kinds[i]);
    CHECK(level_limit(m[0]) == 6);
    CHECK(level_limit(m[3]) == 2);
    CHECK(family_label(m[0]) == "const(alpha=-2, beta=0)");
}

TEST_CASE("failed checks carry their tuple") {
    VerifyConfig c;
    c.family = make_family(Kind::constant, -2.0, 0.0);
    c.gamma = 0.0;
    const SuiteReport r = run_suite(Suite::riccati, c);
    CHECK_FALSE(r.passed());
    const std::vector<Check> fails = r.failures();
    REQUIRE_FALSE(fails.empty());
    const Check& f = fails.front();
    CHECK(f.subject.find("const(alpha=-2, beta=0)") == 0);
    CHECK(f.error.find("InadmissibleGamma") == 0);
}

TEST_CASE("family json") {
    const Family f = make_family(Kind::one_minus_s2, -4.0, 1.0);
    CHECK(to_json(f).dump() == R"({"kind":"one_minus_s2","alpha":-4.0,"beta":1.0})");
    const Family g = family_from_json(Json::parse(R"({"kind":"s2","alpha":"-7/2","beta":2})"));
    CHECK(g.alpha_exact() == Rational(-7, 2));
    CHECK_THROWS_AS(family_from_json(Json::parse(R"({"kind":"cubic","alpha":-1,"beta":0})")), Error);
    CHECK_THROWS_AS(family_from_json(Json::parse(R"({"kind":"const"})")), Error);
}

TEST_CASE("deformation json") {
    const Family h = make_family(Kind::constant, -2.0, 0.0);
    CHECK(to_json(Deformation::make(h, 0, INFINITY)).dump() ==
          R"({"family":{"kind":"const","alpha":-2.0,"beta":0.0},"m":0,"gamma":"inf","s0":0.0,"delta":null})");
    const Family c = make_family(Kind::linear, 0.0, 2.0);
    const Json j = to_json(Deformation::make(c, 0, 3.0, std::nullopt, Rational(2)));
    CHECK(j["gamma"] == 3.0);
    CHECK(j["s0"] == 1.0);
    CHECK(j["delta"] == 2.0);
    CHECK(gamma_from_json(Json("inf")) == INFINITY);
    CHECK_THROWS_AS(gamma_from_json(Json("huge")), Error);
}

TEST_CASE("polynomial and spectral report json") {
    const Family h = make_family(Kind::constant, -2.0, 0.0);
    const Json p = to_json(assoc<Rational>(h, 2, 0));
    CHECK(p["l"] == 2);
    CHECK(p["coeffs"].dump() == R"(["-1/4","0","1/2"])");
    FdSpectrum s{{-1, 1, 200}, {1.0, 2.5}, {}, {}, 0};
    const Json r = to_json(match_spectrum(s, {1.0}, 1));
    CHECK(r.dump() == R"({"grid":{"x_min":-1.0,"x_max":1.0,"N":200},"eigenvalues":[1.0,2.5],"targets":[1.0],)"
                      R"("matched":[{"target":1.0,"found":1.0,"residual":0.0}],"extras":[2.5]})");
}
