#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace coulomb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer coweights and covectors. Sectors are short, so plain int64 is enough.
using Coweight = std::vector<std::int64_t>;
using Covector = std::vector<std::int64_t>;

/// Renders `p` or `p/q` in lowest terms.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Parses `p`, `-p`, `p/q`. Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

std::int64_t pairing_value(const Covector& a, const Coweight& lambda);

/// An element of ½Z stored as a count of half units.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_half_units(std::int64_t twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInteger from_integer(std::int64_t value) {
    return from_half_units(2 * value);
  }
  /// Accepts `n`, `n/2` or any rational equal to an element of ½Z.
  static HalfInteger parse(std::string_view text);
  /// Throws std::invalid_argument unless `value` lies in ½Z.
  static HalfInteger from_rational(const Rational& value);

  constexpr std::int64_t half_units() const { return twice_; }
  Rational to_rational() const {
    Rational r(static_cast<long>(twice_), 2L);
    r.canonicalize();
    return r;
  }
  std::string to_string() const;

  constexpr HalfInteger operator+(HalfInteger other) const {
    return from_half_units(twice_ + other.twice_);
  }
  constexpr HalfInteger operator-(HalfInteger other) const {
    return from_half_units(twice_ - other.twice_);
  }
  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  std::int64_t twice_ = 0;
};

}  // namespace coulomb
