#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace symchain {

/// Exact rational number. GMP keeps it in lowest terms with a positive
/// denominator after every arithmetic operation; zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

/// "3", "-1/2". Integral values print without a denominator.
std::string to_string(const Rational& q);

/// Parses "a" or "a/b" (optional leading '-'). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Integer lcm_of_denominators(const std::vector<Rational>& values);

/// Scales `v` by a positive rational so all entries are integers with gcd 1.
/// A zero vector is returned unchanged.
std::vector<Rational> make_primitive(std::vector<Rational> v);

}  // namespace symchain
