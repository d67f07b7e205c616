#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coulomb/rational.hpp"

namespace coulomb {

/// Multivariate polynomial with exact rational coefficients in a fixed number
/// of variables. Terms are kept in canonical expanded form: no zero
/// coefficients are stored.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t variable_count = 0) : nvars_(variable_count) {}

  static Polynomial constant(std::size_t variable_count, const Rational& c);
  static Polynomial variable(std::size_t variable_count, std::size_t index);
  static Polynomial monomial(Exponents exponents, const Rational& c);

  std::size_t variable_count() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Adds `c * x^exponents`, dropping the entry if it cancels.
  void add_term(const Exponents& exponents, const Rational& c);

  /// -1 for the zero polynomial.
  int total_degree() const;
  bool depends_on(std::size_t var) const;
  /// Constant coefficient if the polynomial is a constant.
  std::optional<Rational> constant_value() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  Polynomial operator-() const;
  bool operator==(const Polynomial& other) const = default;

  Polynomial pow(unsigned exponent) const;

  /// Substitutes x_j -> x_j + shift[j] * x_target for every j with a nonzero
  /// shift.
  Polynomial translate(std::span<const Rational> shift, std::size_t target) const;

  /// Sets x_var = value. The variable count is unchanged.
  Polynomial evaluate(std::size_t var, const Rational& value) const;

  /// Exact division by x_var; nullopt if some term is not divisible.
  std::optional<Polynomial> divide_by_variable(std::size_t var) const;

  /// Exact quotient a/b; nullopt if b does not divide a.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

  /// Replaces x_var by `value` (a polynomial in the same variables).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// Drops variable `var`, which must not occur.
  Polynomial remove_variable(std::size_t var) const;

  /// Terms printed in decreasing graded-lex order, e.g. `2*w^2*hbar - 1/2`.
  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

/// Graded-lex comparison used for printing: true if a comes before b.
bool graded_lex_greater(const Polynomial::Exponents& a, const Polynomial::Exponents& b);

}  // namespace coulomb
