#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace phml {

// All quantities that feed the distance and persistence computations are
// exact rationals; doubles appear only in plot-oriented exports.
using Rational = mpq_class;

// Parses "p", "-p", "p/q" or a plain decimal like "0.25" into a canonical
// rational. Throws ParseError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical string form: "p" when the denominator is 1, else "p/q".
// parse_rational(rational_to_string(r)) == r.
std::string rational_to_string(const Rational& r);

double rational_to_double(const Rational& r);

// Fixed-width float rendering used by every CSV/JSON export so that two
// identical runs emit identical bytes.
std::string double_repr(double value);

}  // namespace phml
