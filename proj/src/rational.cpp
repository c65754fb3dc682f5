#include "hyperfact/rational.hpp"

#include <cctype>
#include <cmath>

#include "hyperfact/error.hpp"

namespace hyperfact {

Rational to_rational(double x) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::ParameterViolation, "non-finite parameter");
    }
    Rational q(x);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] {
        return Error(ErrorKind::ParameterViolation, "cannot parse rational '" + s + "'");
    };
    if (s.empty()) throw bad();
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw bad();
        q.canonicalize();
        return q;
    }
    // Decimal with optional exponent, parsed exactly.
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (seen_point) throw bad();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) --scale;
        } else {
            throw bad();
        }
    }
    if (!any_digit) throw bad();
    if (pos < s.size()) {
        std::string exponent = s.substr(pos + 1);
        if (exponent.empty()) throw bad();
        try {
            std::size_t used = 0;
            scale += std::stol(exponent, &used);
            if (used != exponent.size()) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    mpz_class numerator(digits, 10);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(numerator, power) : Rational(numerator * power);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_exact_double(const Rational& q) {
    double d = q.get_d();
    return std::isfinite(d) && Rational(d) == q;
}

}  // namespace hyperfact
