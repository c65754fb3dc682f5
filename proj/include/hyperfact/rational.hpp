#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hyperfact {

using Rational = mpq_class;

/// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double x);

/// Accepts integers ("-3"), fractions ("-9/2") and plain decimals ("0.25",
/// "-1e-2"); decimals are read exactly in base ten.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// True when the rational is exactly representable as a double.
bool is_exact_double(const Rational& q);

}  // namespace hyperfact
