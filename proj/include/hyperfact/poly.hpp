#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "hyperfact/error.hpp"
#include "hyperfact/rational.hpp"

namespace hyperfact {

/// Coefficient field behaviour. Exact rationals compare structurally; doubles
/// get a relative tolerance wherever a zero test is needed.
template <class T>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from(const Rational& q) { return q; }
    static double to_double(const Rational& q) { return q.get_d(); }
    static double magnitude(const Rational& q) { return std::abs(q.get_d()); }
};

template <>
struct CoeffTraits<double> {
    static constexpr bool exact = false;
    static double from(const Rational& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
    static double magnitude(double x) { return std::abs(x); }
};

/// Dense univariate polynomial, index = power of s.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }
    static Poly monomial(int power, const T& c = T(1)) {
        std::vector<T> v(static_cast<std::size_t>(power) + 1, T(0));
        v.back() = c;
        return Poly(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<T>& coeffs() const { return coeffs_; }

    T coeff(int i) const {
        if (i < 0 || i > degree()) return T(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<T> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * T(static_cast<long>(i));
        return Poly(std::move(d));
    }

    Poly derivative(int order) const {
        Poly p = *this;
        for (int k = 0; k < order; ++k) p = p.derivative();
        return p;
    }

    double operator()(double s) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + CoeffTraits<T>::to_double(*it);
        return acc;
    }

    T evaluate_exact(const T& s) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    /// log|p(s)| without overflow for large |s|: p(s) = s^d * sum c_i s^{i-d}.
    double log_abs(double s) const {
        if (coeffs_.empty()) return -INFINITY;
        if (std::abs(s) <= 1.0) return std::log(std::abs((*this)(s)));
        double inv = 1.0 / s;
        double acc = 0.0;
        for (const T& c : coeffs_) acc = acc * inv + CoeffTraits<T>::to_double(c);
        return degree() * std::log(std::abs(s)) + std::log(std::abs(acc));
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double max_abs() const {
        double m = 0.0;
        for (const T& c : coeffs_) m = std::max(m, CoeffTraits<T>::magnitude(c));
        return m;
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& c) {
        for (T& x : coeffs_) x *= c;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= T(-1); }
    friend Poly operator*(Poly a, const T& c) { return a *= c; }
    friend Poly operator*(const T& c, Poly a) { return a *= c; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Long division. The divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw Error(ErrorKind::DivisibilityFailure, "division by the zero polynomial");
        std::vector<T> rem = coeffs_;
        int dd = d.degree();
        int nd = degree();
        if (nd < dd) return {Poly(), *this};
        std::vector<T> quot(static_cast<std::size_t>(nd - dd) + 1, T(0));
        const T& lead = d.coeffs_.back();
        for (int k = nd - dd; k >= 0; --k) {
            T q = rem[static_cast<std::size_t>(k + dd)] / lead;
            quot[static_cast<std::size_t>(k)] = q;
            for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * d.coeffs_[static_cast<std::size_t>(j)];
            rem[static_cast<std::size_t>(k + dd)] = T(0);
        }
        rem.resize(static_cast<std::size_t>(dd));
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    Poly pow(int n) const {
        Poly r = Poly::constant(T(1));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    template <class U>
    Poly<U> convert() const {
        std::vector<U> v;
        v.reserve(coeffs_.size());
        for (const T& c : coeffs_) {
            if constexpr (std::is_same_v<U, double>) v.push_back(CoeffTraits<T>::to_double(c));
            else v.push_back(U(c));
        }
        return Poly<U>(std::move(v));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

/// Zero test: exact for rationals, relative to `scale` for doubles.
template <class T>
bool negligible(const Poly<T>& p, double scale, double rel_tol = 1e-12) {
    if constexpr (CoeffTraits<T>::exact) {
        (void)scale;
        (void)rel_tol;
        return p.is_zero();
    } else {
        return p.max_abs() <= rel_tol * std::max(scale, 1e-300);
    }
}

}  // namespace hyperfact
