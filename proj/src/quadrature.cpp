#include "hyperfact/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperfact/error.hpp"

namespace hyperfact {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;
// exp(π/2 sinh t) stays finite for t below this
const double t_limit_infinite = std::asinh(700.0 / half_pi);
constexpr double t_limit_finite = 6.5;

struct Node {
    double x;
    double w;
    bool valid;
};

class Rule {
public:
    Rule(double a, double b) : a_(a), b_(b) {
        lower_inf_ = std::isinf(a);
        upper_inf_ = std::isinf(b);
        t_max_ = (lower_inf_ || upper_inf_) ? t_limit_infinite : t_limit_finite;
    }

    double t_max() const { return t_max_; }

    Node node(double t) const {
        const double sh = std::sinh(t);
        const double ch = std::cosh(t);
        const double u = half_pi * sh;
        if (!lower_inf_ && !upper_inf_) {
            const double half = 0.5 * (b_ - a_);
            // distance to the nearer endpoint, computed without cancellation
            const double e = std::exp(-2.0 * std::abs(u));
            const double dist = half * 2.0 * e / (1.0 + e);
            const double x = t >= 0 ? b_ - dist : a_ + dist;
            const double c = std::cosh(u);
            const double w = half * half_pi * ch / (c * c);
            return {x, w, dist > 0 && x > a_ && x < b_ && std::isfinite(w)};
        }
        if (lower_inf_ && upper_inf_) {
            const double x = std::sinh(u);
            const double w = half_pi * ch * std::cosh(u);
            return {x, w, std::isfinite(x) && std::isfinite(w)};
        }
        const double e = std::exp(u);
        const double x = upper_inf_ ? a_ + e : b_ - e;
        const double w = half_pi * ch * e;
        const bool inside = upper_inf_ ? x > a_ : x < b_;
        return {x, w, inside && std::isfinite(x) && std::isfinite(w)};
    }

private:
    double a_, b_;
    bool lower_inf_ = false;
    bool upper_inf_ = false;
    double t_max_;
};

struct Sums {
    double value = 0.0;
    double absolute = 0.0;
    int evaluations = 0;
};

double accumulate(const Integrand& f, const Rule& rule, double t, Sums& s) {
    Node n = rule.node(t);
    if (!n.valid) return 0.0;
    const double y = f(n.x);
    ++s.evaluations;
    if (!std::isfinite(y)) {
        throw Error(ErrorKind::NonFinite, "integrand is not finite at s=" + std::to_string(n.x));
    }
    s.value += n.w * y;
    s.absolute += n.w * std::abs(y);
    return std::abs(n.w * y);
}

// Walks outward over integer t until two consecutive terms are negligible;
// finer levels stay inside the range found here, so the integrand is never
// asked for values at abscissae where it only contributes rounding noise.
double sweep(const Integrand& f, const Rule& rule, double dir, Sums& s) {
    int quiet = 0;
    int k = 1;
    for (; k <= static_cast<int>(rule.t_max()); ++k) {
        const double term = accumulate(f, rule, dir * k, s);
        quiet = (s.absolute > 0.0 && term <= 1e-18 * s.absolute) ? quiet + 1 : 0;
        if (quiet == 2) break;
    }
    return std::min(static_cast<double>(k), rule.t_max());
}

}  // namespace

QuadratureResult quad(const Integrand& f, double a, double b, double tol) {
    if (std::isnan(a) || std::isnan(b)) throw Error(ErrorKind::NonFinite, "integration limit is NaN");
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = quad(f, b, a, tol);
        r.value = -r.value;
        return r;
    }
    const Rule rule(a, b);
    // level 0: h = 1, nodes at integers
    Sums sums;
    accumulate(f, rule, 0.0, sums);
    const double t_hi = sweep(f, rule, 1.0, sums);
    const double t_lo = sweep(f, rule, -1.0, sums);
    double h = 1.0;
    double previous = sums.value * h;
    for (int level = 1; level <= quad_max_level; ++level) {
        h *= 0.5;
        // new nodes are the odd multiples of h
        for (double t = h; t <= std::max(t_hi, t_lo); t += 2.0 * h) {
            if (t <= t_hi) accumulate(f, rule, t, sums);
            if (t <= t_lo) accumulate(f, rule, -t, sums);
        }
        const double current = sums.value * h;
        const double diff = std::abs(current - previous);
        const double scale = sums.absolute * h;
        if (level >= 3 && diff <= tol * std::max(scale, std::numeric_limits<double>::min())) {
            return {current, diff, sums.evaluations, level};
        }
        previous = current;
    }
    throw Error(ErrorKind::NoConvergence, "quadrature did not converge on (" + std::to_string(a) + ", " +
                                              std::to_string(b) + ") by level " + std::to_string(quad_max_level));
}

TailLimit tail_limit(const Integrand& F, double length, double tol) {
    if (length == 0.0) return {true, 0.0};
    const bool toward_infinity = std::isinf(length);
    constexpr int decades = 30;

    std::vector<double> increments;
    double partial = 0.0;
    double prev = toward_infinity ? 0.0 : length;
    for (int k = toward_infinity ? 0 : 1; k <= decades; ++k) {
        const double point = toward_infinity ? std::pow(10.0, k) : length * std::pow(10.0, -k);
        double inc = 0.0;
        try {
            inc = std::abs(quad(F, std::min(prev, point), std::max(prev, point), tol).value);
        } catch (const Error&) {
            return {false, INFINITY};
        }
        increments.push_back(inc);
        partial += inc;
        prev = point;
    }
    const double last = increments.back();
    const double before = increments[increments.size() - 2];
    double tail = 0.0;
    if (last > 0.0) {
        if (before <= 0.0) return {false, INFINITY};
        const double r = last / before;
        if (!(r < 1.0)) return {false, INFINITY};
        tail = last * r / (1.0 - r);
    }
    const double extrapolated = partial + tail;
    double direct = 0.0;
    try {
        direct = std::abs(quad(F, 0.0, length, tol).value);
    } catch (const Error&) {
        return {false, INFINITY};
    }
    if (std::abs(direct - extrapolated) > 1e-6 * std::max(1e-300, direct)) return {false, INFINITY};
    return {true, direct};
}

}  // namespace hyperfact
