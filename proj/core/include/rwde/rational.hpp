#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rwde {

/// Exact rational scalar used for every algebraic identity check.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" or "2.5e-3"
/// into an exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace rwde
