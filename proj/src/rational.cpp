#include "coulomb/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "coulomb/errors.hpp"

namespace coulomb {

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s))
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_integer(text));
  } else {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
  }
  r.canonicalize();
  return r;
}

std::int64_t pairing_value(const Covector& a, const Coweight& lambda) {
  if (a.size() != lambda.size())
    throw DimensionError("pairing: covector has length " + std::to_string(a.size()) +
                         " but coweight has length " + std::to_string(lambda.size()));
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * lambda[i];
  return s;
}

HalfInteger HalfInteger::parse(std::string_view text) {
  return from_rational(parse_rational(text));
}

HalfInteger HalfInteger::from_rational(const Rational& value) {
  Rational twice = value * 2;
  twice.canonicalize();
  if (twice.get_den() != 1)
    throw std::invalid_argument(coulomb::to_string(value) + " is not a half-integer");
  if (!twice.get_num().fits_slong_p())
    throw std::invalid_argument(coulomb::to_string(value) + " is out of range");
  return from_half_units(twice.get_num().get_si());
}

std::string HalfInteger::to_string() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::string format_vector(const Coweight& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace coulomb
