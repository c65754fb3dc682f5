#include "hyperfact/catalog.hpp"

#include <functional>
#include <string>

#include "hyperfact/error.hpp"
#include "hyperfact/quadrature.hpp"

namespace hyperfact {

namespace {

const std::array<CatalogEntry, 10> entries{{
    {1, "Shifted oscillator", Kind::constant, false, -2, 0, 0},
    {2, "Three-dimensional oscillator", Kind::linear, false, -1, 2, 0},
    {3, "Pöschl-Teller type potential", Kind::one_minus_s2, false, -4, 1, 0},
    {4, "Generalized Pöschl-Teller potential", Kind::s2_minus_one, false, -5, 9, 0},
    {5, "Morse type potential", Kind::s2, false, -3, 2, 0},
    {6, "Scarf hyperbolic type potential", Kind::s2_plus_one, false, -8, 1, 0},
    {7, "Coulomb type potential", Kind::linear, true, 0, 2, 2},
    {8, "Trigonometric Rosen-Morse type potential", Kind::one_minus_s2, true, -4, 0, 1},
    {9, "Eckart type potential", Kind::s2_minus_one, true, -8, 0, 1},
    {10, "Hyperbolic Rosen-Morse type potential", Kind::s2_plus_one, true, -8, 0, 1},
}};

double deformation_term(const std::function<double(double)>& integrand, double numerator, double s0, double s,
                        double gamma) {
    if (std::isinf(gamma)) return 0.0;
    const double integral = s == s0 ? 0.0 : quad(integrand, s0, s, 1e-13).value;
    return numerator / (gamma + integral);
}

}  // namespace

const std::array<CatalogEntry, 10>& catalog() { return entries; }

const CatalogEntry& catalog_entry(int id) {
    if (id < 1 || id > 10) throw Error(ErrorKind::ParameterViolation, "catalog ids run from 1 to 10");
    return entries[static_cast<std::size_t>(id - 1)];
}

CatalogValue catalog_reference(int id, double alpha, double beta, int m, double x, double gamma,
                               std::optional<double> delta) {
    const CatalogEntry& e = catalog_entry(id);
    const Family f = Family::unchecked(e.kind, to_rational(alpha), to_rational(beta));
    if (e.shifted) {
        const bool subfamily = e.kind == Kind::linear ? alpha == 0.0 : beta == 0.0;
        if (!subfamily) {
            throw Error(ErrorKind::ParameterViolation, std::string(e.name) + " needs the weight-power subfamily");
        }
    } else if (delta && *delta != 0.0) {
        throw Error(ErrorKind::ParameterViolation, "delta applies to catalog entries 7-10 only");
    }
    const double a = alpha, b = beta, dl = delta.value_or(0.0);
    const double am = -(2 * m + a - 1) / 2;
    const double apm = (2 * m - a - 1) / 2;
    const double s0 = f.base_point();
    const double gm = -m * (m + a - 1);
    CatalogValue r{};
    switch (id) {
    case 1: {
        r.lambda = -a * m;
        r.V_upper = (a * x + b) * (a * x + b) / 4 - a / 2 + r.lambda;
        auto g = [&](double t) { return std::exp(a * t * t / 2 + b * t); };
        r.W = -(a * x + b) / 2 + deformation_term(g, g(x), s0, x, gamma);
        break;
    }
    case 2: {
        r.lambda = -a * m;
        r.V_upper = a * a / 16 * x * x + (b + m - 0.5) * (b + m + 0.5) / (x * x) + a / 2 * (b + m - 1) + r.lambda;
        auto g = [&](double t) { return std::pow(t, m + b - 1) * std::exp(a * t); };
        const double num = std::pow(2.0, -(2 * m + 2 * b - 1)) * std::pow(x, 2 * m + 2 * b - 1) * std::exp(a * x * x / 4);
        r.W = -a / 4 * x - (b + m - 0.5) / x + deformation_term(g, num, s0, x * x / 4, gamma);
        break;
    }
    case 3:
    case 8: {
        const double csc = 1 / std::sin(x), cot = std::cos(x) / std::sin(x);
        const double bb = id == 3 ? b : 0.0;
        const double p1 = -(a - bb) / 2 + m - 1, p2 = -(a + bb) / 2 + m - 1;
        auto g = [&](double t) { return std::pow(1 + t, p1) * std::pow(1 - t, p2); };
        const double num = std::sin(x) * std::pow(1 + std::cos(x), p1) * std::pow(1 - std::cos(x), p2);
        const double term = deformation_term(g, num, s0, std::cos(x), gamma);
        if (id == 3) {
            r.lambda = m * (m - a - 1);
            r.V_upper = (apm * apm + apm + b * b / 4) * csc * csc - (2 * apm + 1) * b / 2 * cot * csc - apm * apm + r.lambda;
            r.W = apm * cot - b / 2 * csc + term;
        } else {
            const double den = 2 * m - a - 1;
            r.lambda = m * (m - a - 1) - dl * dl / (den * den);
            r.V_upper = (apm * apm + apm) * csc * csc + dl * cot - apm * apm + m * (m - a - 1);
            r.W = apm * cot + term + dl / den;
        }
        break;
    }
    case 4:
    case 9: {
        const double csch = 1 / std::sinh(x), coth = std::cosh(x) / std::sinh(x);
        const double bb = id == 4 ? b : 0.0;
        const double p1 = (a - bb) / 2 + m - 1, p2 = (a + bb) / 2 + m - 1;
        auto g = [&](double t) { return std::pow(t + 1, p1) * std::pow(t - 1, p2); };
        const double num = std::sinh(x) * std::pow(std::cosh(x) + 1, p1) * std::pow(std::cosh(x) - 1, p2);
        const double term = deformation_term(g, num, s0, std::cosh(x), gamma);
        if (id == 4) {
            r.lambda = gm;
            r.V_upper = (am * am - am + b * b / 4) * csch * csch - (2 * am - 1) * b / 2 * coth * csch + am * am + r.lambda;
            r.W = am * coth - b / 2 * csch + term;
        } else {
            const double den = 2 * m + a - 1;
            r.lambda = gm - dl * dl / (den * den);
            r.V_upper = (am * am - am) * csch * csch - dl * coth + am * am + gm;
            r.W = am * coth + term + dl / den;
        }
        break;
    }
    case 5: {
        r.lambda = gm;
        r.V_upper = b * b / 4 * std::exp(-2 * x) - (2 * am - 1) * b / 2 * std::exp(-x) + am * am + r.lambda;
        auto g = [&](double t) { return std::pow(t, 2 * m + a - 2) * std::exp(-b / t); };
        const double num = std::exp(x) * std::exp((2 * m + a - 2) * x) * std::exp(-b * std::exp(-x));
        r.W = -b / 2 * std::exp(-x) + am + deformation_term(g, num, s0, std::exp(x), gamma);
        break;
    }
    case 6:
    case 10: {
        const double sech = 1 / std::cosh(x), th = std::tanh(x);
        const double bb = id == 6 ? b : 0.0;
        auto g = [&](double t) { return std::pow(t * t + 1, a / 2 + m - 1) * std::exp(bb * std::atan(t)); };
        const double num = std::cosh(x) * std::pow(std::cosh(x), 2 * m + a - 2) * std::exp(bb * std::atan(std::sinh(x)));
        const double term = deformation_term(g, num, s0, std::sinh(x), gamma);
        if (id == 6) {
            r.lambda = gm;
            r.V_upper = (-am * am + am + b * b / 4) * sech * sech - (2 * am - 1) * b / 2 * th * sech + am * am + r.lambda;
            r.W = am * th - b / 2 * sech + term;
        } else {
            const double den = 2 * m + a - 1;
            r.lambda = gm - dl * dl / (den * den);
            r.V_upper = (-am * am + am) * sech * sech - dl * th + am * am + gm;
            r.W = am * th + term + dl / den;
        }
        break;
    }
    case 7: {
        const double den = 2 * m + 2 * b - 1;
        r.lambda = -dl * dl / (den * den);
        r.V_upper = (b + m - 0.5) * (b + m + 0.5) / (x * x) - dl / x;
        auto g = [&](double t) { return std::pow(t, m + b - 1); };
        const double num = std::pow(2.0, -den) * std::pow(x, den);
        r.W = -(b + m - 0.5) / x + deformation_term(g, num, s0, x * x / 4, gamma) + dl / den;
        break;
    }
    default: break;
    }
    return r;
}

}  // namespace hyperfact
