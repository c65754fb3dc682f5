#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hyperfact/family.hpp"

namespace testsupport {

using hyperfact::Family;
using hyperfact::Kind;

inline std::vector<Family> matrix() {
    return {
        hyperfact::make_family(Kind::constant, -2.0, 0.0),
        hyperfact::make_family(Kind::linear, -1.0, 2.0),
        hyperfact::make_family(Kind::one_minus_s2, -4.0, 1.0),
        hyperfact::make_family(Kind::s2_minus_one, -5.0, 9.0),
        hyperfact::make_family(Kind::s2, -7.0, 2.0),
        hyperfact::make_family(Kind::s2_plus_one, -8.0, 1.0),
    };
}

/// Uniform interior points on a bounded window of the family's interval.
inline std::vector<double> window_points(const Family& f, int count, unsigned seed = 7) {
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

/// Central difference with one Richardson step.
inline double richardson_derivative(const std::function<double(double)>& g, double x, double h) {
    auto d = [&](double step) { return (g(x + step) - g(x - step)) / (2 * step); };
    return (4 * d(h / 2) - d(h)) / 3;
}

inline double richardson_second(const std::function<double(double)>& g, double x, double h) {
    auto d2 = [&](double step) { return (g(x + step) - 2 * g(x) + g(x - step)) / (step * step); };
    return (4 * d2(h / 2) - d2(h)) / 3;
}

}  // namespace testsupport
