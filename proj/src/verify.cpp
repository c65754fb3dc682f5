#include "hyperfact/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>

#include "hyperfact/catalog.hpp"
#include "hyperfact/ladder.hpp"
#include "hyperfact/polyfun.hpp"
#include "hyperfact/riccati.hpp"
#include "hyperfact/schrod.hpp"

namespace hyperfact {

namespace {

constexpr std::array<std::string_view, 6> suite_names{"algebra", "recurrence", "orthogonality",
                                                      "riccati", "catalog",    "spectrum"};

std::vector<double> window_points(const Family& f, int count, unsigned seed) {
    double lo = 0, hi = 0;
    switch (f.kind()) {
    case Kind::constant: lo = -3; hi = 3; break;
    case Kind::linear: lo = 0.05; hi = 6; break;
    case Kind::one_minus_s2: lo = -0.95; hi = 0.95; break;
    case Kind::s2_minus_one: lo = 1.05; hi = 6; break;
    case Kind::s2: lo = 0.1; hi = 6; break;
    case Kind::s2_plus_one: lo = -3; hi = 3; break;
    }
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (auto& p : pts) p = u(gen);
    return pts;
}

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

std::vector<Family> families(const VerifyConfig& c) {
    return c.family ? std::vector<Family>{*c.family} : default_test_matrix();
}

std::vector<int> orders(const Family& f, const VerifyConfig& c) {
    std::vector<int> out;
    for (int m : c.orders)
        if (m >= 0 && cutoff(f).admits(m + 1)) out.push_back(m);
    return out;
}

std::string gamma_label(double g) { return std::isinf(g) ? "inf" : std::to_string(g); }

void guarded(std::vector<Check>& out, Check proto, const std::function<double()>& residual) {
    try {
        proto.residual = residual();
    } catch (const Error& e) {
        proto.residual = INFINITY;
        proto.error = e.what();
    }
    out.push_back(std::move(proto));
}

void algebra(SuiteReport& r, const VerifyConfig& c) {
    for (const Family& f : families(c)) {
        for (int m : orders(f, c)) {
            const std::string subject = family_label(f);
            try {
                const LadderContext ctx = c.delta ? LadderContext::make_tilde(f, m, *c.delta) : LadderContext::make(f, m);
                const IdentityReport exact = check_identities<Rational>(ctx, level_limit(f));
                for (const IdentityEntry& e : exact.entries)
                    r.checks.push_back({subject, e.identity + " (rational)", e.l, e.m, e.residual, 0.0, {}});
                const IdentityReport fl = check_identities<double>(ctx, level_limit(f));
                for (const IdentityEntry& e : fl.entries)
                    r.checks.push_back({subject, e.identity + " (float)", e.l, e.m, e.residual, 1e-12, {}});
            } catch (const Error& e) {
                r.checks.push_back({subject, "ladder identities", -1, m, INFINITY, 0.0,
                                    e.what()});
            }
        }
    }
}

void recurrence(SuiteReport& r, const VerifyConfig& c) {
    for (const Family& f : families(c)) {
        const auto pts = window_points(f, 32, 11);
        for (int l = 1; l <= level_limit(f); ++l) {
            for (int m = 1; m <= l; ++m) {
                guarded(r.checks, {family_label(f), m == l ? "recurrence at m=l" : "three-term recurrence", l, m, 0, 1e-10, {}},
                        [&] {
                            double worst = 0.0;
                            for (double s : pts) worst = std::max(worst, recurrence_residual(f, l, m, s));
                            return worst;
                        });
            }
        }
    }
}

void orthogonality(SuiteReport& r, const VerifyConfig& c) {
    for (const Family& f : families(c)) {
        const int lmax = level_limit(f);
        for (int m = 0; m <= std::min(3, lmax); ++m) {
            guarded(r.checks, {family_label(f), "normalized gram off-diagonal", -1, m, 0, 1e-8, {}}, [&] {
                const auto g = gram(f, m, lmax);
                double worst = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i)
                    for (std::size_t j = 0; j < g.size(); ++j)
                        if (i != j) worst = std::max(worst, std::abs(g[i][j]) / std::sqrt(g[i][i] * g[j][j]));
                return worst;
            });
        }
        for (int l = 1; l <= lmax; ++l) {
            for (int m = 0; m < l; ++m) {
                guarded(r.checks, {family_label(f), "norm ratio", l, m, 0, 1e-7, {}}, [&] {
                    const double lower = norm(f, l, m);
                    const double gap = eigenvalue(f, l) - eigenvalue(f, m);
                    return std::abs(norm(f, l, m + 1) - std::sqrt(gap) * lower) / lower;
                });
            }
        }
    }
}

void riccati(SuiteReport& r, const VerifyConfig& c) {
    for (const Family& f : families(c)) {
        const auto pts = window_points(f, 64, 13);
        for (int m = 0; m <= 2 && cutoff(f).admits(m + 1); ++m) {
            std::vector<double> gammas;
            if (c.gamma) gammas = {*c.gamma};
            else gammas = {INFINITY, finite_gamma(f, m)};
            for (double gamma : gammas) {
                const std::string subject = family_label(f) + " gamma=" + gamma_label(gamma);
                const double tol = std::isinf(gamma) ? 1e-10 : 1e-9;
                try {
                    const Deformation d = Deformation::make(f, m, gamma, std::nullopt, c.delta,
                                                            c.delta ? TildeForm::isospectral : TildeForm::printed);
                    guarded(r.checks, {subject, "riccati equation", -1, m, 0, tol, {}}, [&] { return check_riccati(d, pts); });
                    guarded(r.checks, {subject, "factorization", -1, m, 0, 1e-8, {}}, [&] {
                        double worst = 0.0;
                        for (double s : pts) worst = std::max(worst, std::abs(factorization_defect(d, s)));
                        return worst;
                    });
                } catch (const Error& e) {
                    r.checks.push_back({subject, "deformation", -1, m, INFINITY, tol,
                                        e.what()});
                }
            }
        }
    }
}

void catalog_suite(SuiteReport& r, const VerifyConfig&) {
    for (const CatalogEntry& e : catalog()) {
        const Family f = make_family(e.kind, e.alpha, e.beta);
        std::optional<Rational> delta;
        if (e.shifted) delta = to_rational(e.delta);
        const std::optional<double> delta_d = e.shifted ? std::optional<double>(e.delta) : std::nullopt;
        for (int m = 0; m <= 1 && cutoff(f).admits(m + 1); ++m) {
            const GammaRays rays = Deformation::make(f, m, INFINITY, std::nullopt, delta).rays();
            const double gfin = rays.has_upper_ray() ? -rays.lower_limit + 0.5 : -rays.upper_limit - 0.5;
            for (double gamma : std::vector<double>{INFINITY, gfin}) {
                const std::string subject = std::to_string(e.id) + " " + std::string(e.name) + " gamma=" + gamma_label(gamma);
                const Deformation d = Deformation::make(f, m, gamma, std::nullopt, delta);
                const auto xs = x_grid(e.kind, 16);
                guarded(r.checks, {subject, "superpotential", -1, m, 0, 1e-10, {}}, [&] {
                    double worst = 0.0;
                    for (double x : xs)
                        worst = std::max(worst, std::abs(superpotential_dx(d, x).value -
                                                         catalog_reference(e.id, e.alpha, e.beta, m, x, gamma, delta_d).W));
                    return worst;
                });
                if (std::isinf(gamma) || !e.shifted) {
                    guarded(r.checks, {subject, "upper potential", -1, m, 0, 1e-10, {}}, [&] {
                        double worst = 0.0;
                        for (double x : xs)
                            worst = std::max(worst, std::abs(potentials(d, x).upper -
                                                             catalog_reference(e.id, e.alpha, e.beta, m, x, gamma, delta_d).V_upper));
                        return worst;
                    });
                }
                guarded(r.checks, {subject, "eigenvalue", -1, m, 0, 1e-12, {}}, [&] {
                    const double ref = catalog_reference(e.id, e.alpha, e.beta, m, xs[0], gamma, delta_d).lambda;
                    return std::abs(d.lambda_m_shifted() - ref) / (1.0 + std::abs(ref));
                });
            }
        }
    }
}

struct SpectrumFixture {
    std::string name;
    Family family;
    int m;
    double gamma;
    std::optional<Rational> delta;
    Operator which;
    int levels;
    std::optional<Grid> grid;
    double tol;
};

bool singular(Kind k) { return k == Kind::linear || k == Kind::one_minus_s2 || k == Kind::s2_minus_one; }

std::vector<SpectrumFixture> spectrum_fixtures(const VerifyConfig& c) {
    if (c.family) {
        const Family& f = *c.family;
        const double tol = singular(f.kind()) ? 5e-3 : 1e-3;
        const double gamma = c.gamma.value_or(INFINITY);
        std::vector<SpectrumFixture> out{{family_label(f) + " upper", f, 0, INFINITY, c.delta, Operator::upper, 4, {}, tol}};
        if (!std::isinf(gamma))
            out.push_back({family_label(f) + " partner gamma=" + gamma_label(gamma), f, 0, gamma, c.delta,
                           Operator::partner, 4, {}, tol});
        return out;
    }
    const Family osc = make_family(Kind::constant, -2.0, 0.0);
    const Family coulomb = make_family(Kind::linear, 0.0, 2.0);
    const Family gpt = make_family(Kind::s2_minus_one, -5.0, 9.0);
    const Grid box{-10, 10, 4000};
    return {
        {"shifted oscillator upper", osc, 0, INFINITY, std::nullopt, Operator::upper, 4, box, 1e-3},
        {"shifted oscillator partner gamma=2", osc, 0, 2.0, std::nullopt, Operator::partner, 4, box, 1e-3},
        {"generalized Poschl-Teller upper", gpt, 0, INFINITY, std::nullopt, Operator::upper, 4, {}, 5e-3},
        {"coulomb tilde upper delta=2", coulomb, 0, INFINITY, Rational(2), Operator::upper, 2, {}, 5e-3},
    };
}

void spectrum(SuiteReport& r, const VerifyConfig& c) {
    for (const SpectrumFixture& fx : spectrum_fixtures(c)) {
        try {
            const Deformation d = Deformation::make(fx.family, fx.m, fx.gamma, std::nullopt, fx.delta,
                                                    fx.delta ? TildeForm::isospectral : TildeForm::printed);
            const SpectralReport rep = verify_spectrum(d, fx.which, fx.levels, fx.grid);
            for (const SpectralMatch& mt : rep.matched)
                r.checks.push_back({fx.name, "eigenvalue match", mt.level, fx.m, mt.residual, fx.tol, {}});
            int level = fx.m + 1 + static_cast<int>(rep.matched.size());
            for (double t : rep.missing)
                r.checks.push_back({fx.name, "eigenvalue match", level++, fx.m, INFINITY, fx.tol,
                                    "no eigenvalue near target " + std::to_string(t)});
            r.spectra.emplace_back(fx.name, rep);
        } catch (const Error& e) {
            r.checks.push_back({fx.name, "spectrum", -1, fx.m, INFINITY, fx.tol,
                                e.what()});
        }
    }
}

}  // namespace

std::string_view suite_name(Suite s) noexcept { return suite_names[static_cast<std::size_t>(s)]; }

Suite suite_from_name(std::string_view name) {
    for (Suite s : all_suites)
        if (suite_name(s) == name) return s;
    throw Error(ErrorKind::ParameterViolation, "unknown suite '" + std::string(name) + "'");
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

std::vector<Check> SuiteReport::failures() const {
    std::vector<Check> out;
    for (const Check& c : checks)
        if (!c.passed()) out.push_back(c);
    return out;
}

std::vector<Family> default_test_matrix() {
    return {
        make_family(Kind::constant, -2.0, 0.0),      make_family(Kind::linear, -1.0, 2.0),
        make_family(Kind::one_minus_s2, -4.0, 1.0),  make_family(Kind::s2_minus_one, -5.0, 9.0),
        make_family(Kind::s2, -7.0, 2.0),            make_family(Kind::s2_plus_one, -8.0, 1.0),
    };
}

std::string family_label(const Family& f) {
    return std::string(tag(f.kind())) + "(alpha=" + to_string(f.alpha_exact()) + ", beta=" + to_string(f.beta_exact()) +
           ")";
}

int level_limit(const Family& f) {
    int l = 0;
    while (l < 6 && cutoff(f).admits(l + 1)) ++l;
    return l;
}

double finite_gamma(const Family& f, int m) {
    const GammaRays r = admissible_gamma_range(f, m);
    return r.has_upper_ray() ? -r.lower_limit + 1.0 : -r.upper_limit - 1.0;
}

SuiteReport run_suite(Suite suite, const VerifyConfig& config) {
    SuiteReport r{suite, {}, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    switch (suite) {
    case Suite::algebra: algebra(r, config); break;
    case Suite::recurrence: recurrence(r, config); break;
    case Suite::orthogonality: orthogonality(r, config); break;
    case Suite::riccati: riccati(r, config); break;
    case Suite::catalog: catalog_suite(r, config); break;
    case Suite::spectrum: spectrum(r, config); break;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<SuiteReport> run_suites(const std::vector<Suite>& suites, const VerifyConfig& config) {
    std::vector<std::future<SuiteReport>> jobs;
    for (Suite s : suites) jobs.push_back(std::async(std::launch::async, [s, &config] { return run_suite(s, config); }));
    std::vector<SuiteReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace hyperfact
