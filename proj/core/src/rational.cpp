#include "phml/rational.hpp"

#include <cctype>
#include <cstdio>

#include "phml/errors.hpp"

namespace phml {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Rational parse_decimal(const std::string& s, std::size_t dot) {
  const std::string int_part = s.substr(0, dot);
  const std::string frac_part = s.substr(dot + 1);
  if (frac_part.empty() || !is_integer_token(int_part.empty() ? "0" : int_part))
    throw ParseError("malformed decimal: '" + s + "'");
  for (char c : frac_part)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed decimal: '" + s + "'");

  const bool negative = !int_part.empty() && int_part[0] == '-';
  std::string digits = int_part.empty() ? "0" : int_part;
  if (digits == "-" || digits == "+") digits = "0";
  mpz_class numerator(digits);
  mpz_class scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  numerator *= scale;
  mpz_class frac(frac_part);
  numerator += negative ? -frac : frac;
  Rational r(numerator, scale);
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  // Trim surrounding whitespace.
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) throw ParseError("empty rational token");
  s = s.substr(b, e - b + 1);

  if (std::size_t dot = s.find('.'); dot != std::string::npos)
    return parse_decimal(s, dot);

  std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(s)) throw ParseError("malformed rational: '" + text + "'");
    return Rational(mpz_class(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw ParseError("malformed rational: '" + text + "'");
  mpz_class d(den);
  if (d == 0) throw ParseError("zero denominator: '" + text + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

double rational_to_double(const Rational& r) { return r.get_d(); }

std::string double_repr(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace phml
