#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coulomb/rational.hpp"

namespace coulomb {

/// Truncated power series in q^{1/2} with Laurent monomials b^f in k
/// fugacities. Exponents of q are stored in half units.
class GradedSeries {
 public:
  struct Key {
    std::int64_t half_units = 0;
    std::vector<std::int64_t> fugacity;
    auto operator<=>(const Key&) const = default;
  };
  using TermMap = std::map<Key, Rational>;

  GradedSeries() = default;
  GradedSeries(HalfInteger truncation, std::size_t fugacity_count);

  static GradedSeries one(HalfInteger truncation, std::size_t fugacity_count = 0);
  /// 1 / (1 - q^{half_units/2}), half_units > 0.
  static GradedSeries geometric(HalfInteger truncation, std::int64_t half_units);

  HalfInteger truncation() const { return truncation_; }
  std::size_t fugacity_count() const { return fugacity_count_; }
  const TermMap& terms() const { return terms_; }

  /// Ignores terms beyond the truncation order.
  void add_term(std::int64_t half_units, const std::vector<std::int64_t>& fugacity, const Rational& c);
  Rational coefficient(std::int64_t half_units, const std::vector<std::int64_t>& fugacity = {}) const;

  GradedSeries& operator+=(const GradedSeries& other);
  /// Product, truncated to the smaller of the two orders.
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  GradedSeries pow(unsigned exponent) const;
  bool operator==(const GradedSeries& other) const = default;

  /// Multiplies every term by q^{half_units/2} b^fugacity (and re-truncates).
  GradedSeries shifted(std::int64_t half_units, const std::vector<std::int64_t>& fugacity) const;
  /// Same series at a lower order.
  GradedSeries truncated(HalfInteger order) const;
  /// Sets every fugacity to 1.
  GradedSeries collapse_fugacities() const;
  /// Coefficients of q^{0}, q^{1/2}, ..., up to the truncation order; the
  /// fugacities are collapsed first.
  std::vector<Rational> coefficients() const;

  /// `q^(p/2) * b^(f1,f2): c` lines, sorted by exponent, then fugacity.
  std::string to_text() const;
  /// [[exponent_half_units, [fugacities...], numerator, denominator], ...],
  /// all numbers as strings.
  nlohmann::json to_json() const;
  static GradedSeries from_json(const nlohmann::json& j, HalfInteger truncation, std::size_t fugacity_count);

 private:
  HalfInteger truncation_;
  std::size_t fugacity_count_ = 0;
  TermMap terms_;
};

}  // namespace coulomb
