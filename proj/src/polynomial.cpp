#include "coulomb/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "coulomb/errors.hpp"

namespace coulomb {

namespace {

int degree_of(const Polynomial::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void check_same_space(const Polynomial& a, const Polynomial& b) {
  if (a.variable_count() != b.variable_count())
    throw DimensionError("polynomials live in rings with " + std::to_string(a.variable_count()) +
                         " and " + std::to_string(b.variable_count()) + " variables");
}

}  // namespace

bool graded_lex_greater(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
  int da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(std::size_t variable_count, const Rational& c) {
  Polynomial p(variable_count);
  p.add_term(Exponents(variable_count, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t variable_count, std::size_t index) {
  if (index >= variable_count) throw DimensionError("variable index out of range");
  Exponents e(variable_count, 0);
  e[index] = 1;
  Polynomial p(variable_count);
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Exponents exponents, const Rational& c) {
  Polynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& c) {
  if (exponents.size() != nvars_) throw DimensionError("monomial has wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

bool Polynomial::depends_on(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var] != 0; });
}

std::optional<Rational> Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0) return terms_.begin()->second;
  return std::nullopt;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_space(*this, other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_space(*this, other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_space(a, b);
  Polynomial out(a.nvars_);
  Polynomial::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial Polynomial::translate(std::span<const Rational> shift, std::size_t target) const {
  if (shift.size() > nvars_ || target >= nvars_) throw DimensionError("translate: bad shift");
  // Cache (x_j + s_j x_target)^k as it is reused across terms.
  std::vector<std::vector<Polynomial>> powers(shift.size());
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    Polynomial term = constant(nvars_, c);
    for (std::size_t j = 0; j < shift.size(); ++j) {
      if (shift[j] == 0 || e[j] == 0) continue;
      rest[j] = 0;
      auto& cache = powers[j];
      if (cache.empty()) {
        cache.push_back(constant(nvars_, Rational(1)));
        Polynomial lin = variable(nvars_, j);
        lin.add_term([&] {
          Exponents t(nvars_, 0);
          t[target] = 1;
          return t;
        }(), shift[j]);
        cache.push_back(lin);
      }
      while (cache.size() <= static_cast<std::size_t>(e[j])) cache.push_back(cache.back() * cache[1]);
      term = term * cache[e[j]];
    }
    term = term * monomial(rest, Rational(1));
    out += term;
  }
  return out;
}

Polynomial Polynomial::evaluate(std::size_t var, const Rational& value) const {
  if (var >= nvars_) throw DimensionError("evaluate: variable index out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (int k = 0; k < e[var]; ++k) v *= value;
    Exponents f = e;
    f[var] = 0;
    out.add_term(f, v);
  }
  return out;
}

std::optional<Polynomial> Polynomial::divide_by_variable(std::size_t var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) return std::nullopt;
    Exponents f = e;
    --f[var];
    out.add_term(f, c);
  }
  return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  check_same_space(a, b);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  auto leading = [](const Polynomial& p) {
    auto best = p.terms_.begin();
    for (auto it = p.terms_.begin(); it != p.terms_.end(); ++it)
      if (graded_lex_greater(it->first, best->first)) best = it;
    return best;
  };
  const auto lb = leading(b);
  Polynomial remainder = a;
  Polynomial quotient(a.nvars_);
  while (!remainder.is_zero()) {
    const auto lr = leading(remainder);
    Exponents e(a.nvars_);
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lr->first[i] - lb->first[i];
      if (e[i] < 0) return std::nullopt;
    }
    Polynomial step = monomial(e, lr->second / lb->second);
    quotient += step;
    remainder -= step * b;
  }
  return quotient;
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  check_same_space(*this, value);
  std::vector<Polynomial> powers{constant(nvars_, Rational(1))};
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    while (powers.size() <= static_cast<std::size_t>(e[var])) powers.push_back(powers.back() * value);
    Exponents rest = e;
    rest[var] = 0;
    out += monomial(rest, c) * powers[e[var]];
  }
  return out;
}

Polynomial Polynomial::remove_variable(std::size_t var) const {
  if (depends_on(var)) throw std::logic_error("remove_variable: variable still occurs");
  Polynomial out(nvars_ - 1);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(var));
    out.add_term(f, c);
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != nvars_) throw DimensionError("to_string: wrong number of variable names");
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* x, auto* y) { return graded_lex_greater(x->first, y->first); });
  std::string s;
  bool first = true;
  for (const auto* t : order) {
    Rational c = t->second;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t->first[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (t->first[i] > 1) mono += "^" + std::to_string(t->first[i]);
    }
    if (mono.empty()) {
      s += coulomb::to_string(c);
    } else {
      if (c != 1) s += coulomb::to_string(c) + "*";
      s += mono;
    }
  }
  return s;
}

}  // namespace coulomb
