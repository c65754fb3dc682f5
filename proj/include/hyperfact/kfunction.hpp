#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "hyperfact/error.hpp"
#include "hyperfact/family.hpp"
#include "hyperfact/poly.hpp"

namespace hyperfact {

/// Functions of the form [κ^i(s)·p(s) + κ^j(s)·q(s)]·e^{−r X(s)} with i even,
/// j odd, polynomial p, q (negative powers allowed), X' = 1/κ and a fixed
/// rate r (usually 0). This class is closed under d/ds, multiplication by
/// polynomials and by κ^{±1}, so every ladder operator and every H_m acts on
/// it exactly. The even and odd parts are kept apart; a lower power absorbs a
/// higher one of the same parity via κ² = σ.
template <class T>
class KFunction {
public:
    struct Term {
        int power;
        Poly<T> poly;
    };

    explicit KFunction(const Family& f, T rate = T(0))
        : sigma_(f.sigma_poly<T>()), kappa_(f.kappa_poly<T>()), rate_(rate), kappa_primitive_(primitive_of(f)) {}

    static KFunction term(const Family& f, int power, Poly<T> p, T rate = T(0)) {
        KFunction k(f, rate);
        k.add_term(power, std::move(p));
        return k;
    }

    const T& rate() const { return rate_; }

    template <class U>
    KFunction<U> convert(const Family& f) const {
        KFunction<U> r(f, CoeffTraits<U>::from(Rational(rate_)));
        for (const auto& p : parts_)
            if (p) r += KFunction<U>::term(f, p->power, p->poly.template convert<U>(), r.rate());
        return r;
    }

    const std::optional<Term>& part(int parity) const { return parts_[static_cast<std::size_t>(parity)]; }

    bool structurally_zero() const { return !parts_[0] && !parts_[1]; }

    KFunction& operator+=(const KFunction& o) {
        merge_rate(o);
        for (const auto& p : o.parts_)
            if (p) add_term(p->power, p->poly);
        return *this;
    }
    KFunction& operator-=(const KFunction& o) {
        merge_rate(o);
        for (const auto& p : o.parts_)
            if (p) add_term(p->power, -p->poly);
        return *this;
    }
    KFunction& operator*=(const T& c) {
        for (auto& p : parts_) {
            if (!p) continue;
            p->poly *= c;
            if (p->poly.is_zero()) p.reset();
        }
        return *this;
    }
    friend KFunction operator+(KFunction a, const KFunction& b) { return a += b; }
    friend KFunction operator-(KFunction a, const KFunction& b) { return a -= b; }
    friend KFunction operator*(KFunction a, const T& c) { return a *= c; }
    friend KFunction operator*(KFunction a, int c) { return a *= T(c); }
    friend KFunction operator*(const T& c, KFunction a) { return a *= c; }

    /// Multiplication by a polynomial.
    KFunction times(const Poly<T>& q) const {
        KFunction r = empty_like();
        for (const auto& p : parts_)
            if (p) r.add_term(p->power, p->poly * q);
        return r;
    }

    /// Multiplication by κ^d.
    KFunction kappa_shift(int d) const {
        KFunction r = empty_like();
        for (const auto& p : parts_)
            if (p) r.add_term(p->power + d, p->poly);
        return r;
    }

    /// d/ds (κ^j p) = κ^j p' + (j/2) κ^{j−2} σ' p, plus −r κ^{j−1} p from the
    /// exponential factor.
    KFunction derivative() const {
        KFunction r = empty_like();
        const Poly<T> ds = sigma_.derivative();
        for (const auto& p : parts_) {
            if (!p) continue;
            r.add_term(p->power, p->poly.derivative());
            if (p->power != 0) r.add_term(p->power - 2, p->poly * ds * (T(p->power) / T(2)));
            if (rate_ != T(0)) r.add_term(p->power - 1, p->poly * T(-rate_));
        }
        return r;
    }

    double operator()(double s) const {
        const double sg = sigma_(s);
        const double k = std::sqrt(sg);
        double acc = 0.0;
        for (const auto& p : parts_)
            if (p) acc += std::pow(k, p->power) * p->poly(s);
        if (rate_ != T(0)) acc *= std::exp(-CoeffTraits<T>::to_double(rate_) * kappa_primitive_(s));
        return acc;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& p : parts_)
            if (p) m = std::max(m, p->poly.max_abs());
        return m;
    }

    /// Exactly zero (rational mode) or within `rel_tol·scale` (float mode). When
    /// κ is itself a polynomial the two parts are combined first.
    bool is_zero(double scale = 1.0, double rel_tol = 1e-12) const {
        if (kappa_) return negligible(collapsed(), scale, rel_tol);
        for (const auto& p : parts_)
            if (p && !negligible(p->poly, scale, rel_tol)) return false;
        return true;
    }

    /// Size of the function as a coefficient vector after combining parts where
    /// κ is polynomial; used to express residuals relatively.
    double magnitude() const { return kappa_ ? collapsed().max_abs() : max_abs(); }

    /// Writes the function as κ^power·p and returns p. Exact division by σ (or
    /// by κ when κ is polynomial) is required; anything else is a
    /// DivisibilityFailure.
    Poly<T> reshape(int power) const {
        Poly<T> total;
        for (const auto& p : parts_) {
            if (!p) continue;
            int diff = p->power - power;
            Poly<T> poly = p->poly;
            Poly<T> unit = sigma_;
            int steps = diff / 2;
            if (diff % 2 != 0) {
                if (!kappa_) {
                    if (negligible(poly, max_abs())) continue;
                    throw Error(ErrorKind::DivisibilityFailure,
                                "function has a component of the wrong kappa parity for power " +
                                    std::to_string(power));
                }
                unit = *kappa_;
                steps = diff;
            }
            if (steps >= 0) {
                poly = poly * unit.pow(steps);
            } else {
                for (int i = 0; i < -steps; ++i) {
                    auto [q, r] = poly.divmod(unit);
                    if (!negligible(r, std::max(poly.max_abs(), 1e-300))) {
                        throw Error(ErrorKind::DivisibilityFailure,
                                    "result is not of the form kappa^" + std::to_string(power) + " * polynomial");
                    }
                    poly = q;
                }
            }
            total += poly;
        }
        return total;
    }

private:
    static std::function<double(double)> primitive_of(const Family& f) {
        return [f](double s) { return f.kappa_primitive(s); };
    }

    void merge_rate(const KFunction& o) {
        if (o.rate_ == rate_ || o.structurally_zero()) return;
        if (structurally_zero()) {
            rate_ = o.rate_;
            return;
        }
        throw Error(ErrorKind::ContextMismatch, "adding functions with different exponential factors");
    }

    KFunction empty_like() const {
        KFunction r(*this);
        r.parts_[0].reset();
        r.parts_[1].reset();
        return r;
    }

    void add_term(int power, Poly<T> poly) {
        if (poly.is_zero()) return;
        auto& slot = parts_[static_cast<std::size_t>(((power % 2) + 2) % 2)];
        if (!slot) {
            slot = Term{power, std::move(poly)};
            return;
        }
        int low = std::min(slot->power, power);
        Poly<T> a = slot->poly * sigma_.pow((slot->power - low) / 2);
        Poly<T> b = poly * sigma_.pow((power - low) / 2);
        Poly<T> sum = a + b;
        if (sum.is_zero()) slot.reset();
        else slot = Term{low, std::move(sum)};
    }

    Poly<T> collapsed() const {
        // κ = k(s) polynomial: κ^i p + κ^j q ∝ k^{i−m} p + k^{j−m} q with m = min(i, j).
        int low = 0;
        bool any = false;
        for (const auto& p : parts_)
            if (p) {
                low = any ? std::min(low, p->power) : p->power;
                any = true;
            }
        Poly<T> total;
        for (const auto& p : parts_)
            if (p) total += p->poly * kappa_->pow(p->power - low);
        return total;
    }

    Poly<T> sigma_;
    std::optional<Poly<T>> kappa_;
    T rate_;
    std::function<double(double)> kappa_primitive_;
    std::array<std::optional<Term>, 2> parts_;
};

/// Relative difference between two functions (0 exactly when equal in
/// rational mode).
template <class T>
double kfunction_residual(const KFunction<T>& a, const KFunction<T>& b) {
    KFunction<T> d = a - b;
    const double scale = std::max({a.magnitude(), b.magnitude(), 1e-300});
    if constexpr (CoeffTraits<T>::exact) {
        if (d.is_zero()) return 0.0;
    }
    return d.magnitude() / scale;
}

}  // namespace hyperfact
