#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fusionq {

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses "p", "-p" or "p/q" into a canonical rational; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

}  // namespace fusionq
