#include "coulomb/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "coulomb/errors.hpp"

namespace coulomb {

void TorusTheory::validate() const {
  for (std::size_t i = 0; i < matter.size(); ++i)
    if (matter[i].size() != rank)
      throw DimensionError("matter covector " + std::to_string(i) + " has length " +
                           std::to_string(matter[i].size()) + ", expected rank " +
                           std::to_string(rank));
  if (flavor.empty()) return;
  if (flavor.size() != matter.size())
    throw DimensionError("flavor charges given for " + std::to_string(flavor.size()) +
                         " fields but there are " + std::to_string(matter.size()) +
                         " matter fields");
  for (std::size_t i = 0; i < flavor.size(); ++i)
    if (flavor[i].size() != mass_count)
      throw DimensionError("flavor covector " + std::to_string(i) + " has length " +
                           std::to_string(flavor[i].size()) + ", expected " +
                           std::to_string(mass_count));
}

std::vector<std::string> TorusTheory::coefficient_names() const {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < rank; ++j) names.push_back(rank == 1 ? "w" : "w" + std::to_string(j + 1));
  names.push_back("hbar");
  for (std::size_t k = 0; k < mass_count; ++k)
    names.push_back(mass_count == 1 ? "m" : "m" + std::to_string(k + 1));
  return names;
}

Polynomial TorusTheory::matter_form(std::size_t i) const {
  const std::size_t nv = coefficient_variables();
  Polynomial p(nv);
  Polynomial::Exponents e(nv, 0);
  for (std::size_t j = 0; j < rank; ++j) {
    e[j] = 1;
    p.add_term(e, Rational(static_cast<long>(matter[i][j])));
    e[j] = 0;
  }
  if (!flavor.empty())
    for (std::size_t k = 0; k < mass_count; ++k) {
      e[mass_index(k)] = 1;
      p.add_term(e, Rational(static_cast<long>(flavor[i][k])));
      e[mass_index(k)] = 0;
    }
  return p;
}

TorusTheory with_masses(const TorusTheory& theory, std::vector<Covector> flavor) {
  TorusTheory t = theory;
  t.mass_count = flavor.empty() ? 0 : flavor.front().size();
  t.flavor = std::move(flavor);
  t.validate();
  return t;
}

HalfInteger delta_dimension(const TorusTheory& theory, const Coweight& lambda) {
  if (lambda.size() != theory.rank)
    throw DimensionError("coweight " + format_vector(lambda) + " does not have length " +
                         std::to_string(theory.rank));
  std::int64_t twice = 0;
  for (const auto& a : theory.matter) twice += std::llabs(pairing_value(a, lambda));
  return HalfInteger::from_half_units(twice);
}

std::int64_t structure_exponent(const Covector& a, const Coweight& lambda, const Coweight& mu) {
  const std::int64_t x = pairing_value(a, lambda), y = pairing_value(a, mu);
  return (std::llabs(x) + std::llabs(y) - std::llabs(x + y)) / 2;
}

// --- AlgebraElement -------------------------------------------------------

std::shared_ptr<const TorusTheory> share(TorusTheory theory) {
  theory.validate();
  return std::make_shared<const TorusTheory>(std::move(theory));
}

AlgebraElement::AlgebraElement(std::shared_ptr<const TorusTheory> theory) : theory_(std::move(theory)) {
  if (!theory_) throw std::invalid_argument("AlgebraElement needs a theory");
}

void AlgebraElement::add(const Coweight& sector, const Polynomial& coefficient) {
  if (sector.size() != theory_->rank)
    throw DimensionError("sector " + format_vector(sector) + " does not have length " +
                         std::to_string(theory_->rank));
  if (coefficient.variable_count() != theory_->coefficient_variables())
    throw DimensionError("coefficient polynomial has the wrong number of variables");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(sector, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial AlgebraElement::coefficient(const Coweight& sector) const {
  auto it = terms_.find(sector);
  return it == terms_.end() ? Polynomial(theory_->coefficient_variables()) : it->second;
}

namespace {

void check_same_theory(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.theory_ptr() != b.theory_ptr() && !(a.theory() == b.theory()))
    throw std::invalid_argument("algebra elements belong to different theories");
}

}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  check_same_theory(*this, other);
  for (const auto& [s, c] : other.terms_) add(s, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  check_same_theory(*this, other);
  for (const auto& [s, c] : other.terms_) add(s, -c);
  return *this;
}

AlgebraElement AlgebraElement::scaled(const Polynomial& p) const {
  AlgebraElement out(theory_);
  for (const auto& [s, c] : terms_) out.add(s, p * c);
  return out;
}

bool AlgebraElement::operator==(const AlgebraElement& other) const {
  return (theory_ == other.theory_ || *theory_ == *other.theory_) && terms_ == other.terms_;
}

AlgebraElement AlgebraElement::at_hbar_zero() const {
  AlgebraElement out(theory_);
  for (const auto& [s, c] : terms_) out.add(s, c.evaluate(theory_->hbar_index(), Rational(0)));
  return out;
}

bool AlgebraElement::depends_on_hbar() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.second.depends_on(theory_->hbar_index()); });
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  const auto names = theory_->coefficient_names();
  std::string s;
  for (const auto& [sector, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string label = "X[";
    for (std::size_t j = 0; j < sector.size(); ++j) label += (j ? "," : "") + std::to_string(sector[j]);
    label += "]";
    s += "(" + c.to_string(names) + ") * " + label;
  }
  return s;
}

AlgebraElement monopole_generator(const std::shared_ptr<const TorusTheory>& theory,
                                  const Coweight& lambda) {
  AlgebraElement e(theory);
  e.add(lambda, Polynomial::constant(theory->coefficient_variables(), Rational(1)));
  return e;
}

AlgebraElement scalar_element(const std::shared_ptr<const TorusTheory>& theory, const Polynomial& p) {
  AlgebraElement e(theory);
  e.add(Coweight(theory->rank, 0), p);
  return e;
}

AlgebraElement w_element(const std::shared_ptr<const TorusTheory>& theory, std::size_t j) {
  return scalar_element(theory, Polynomial::variable(theory->coefficient_variables(), j));
}

AlgebraElement hbar_element(const std::shared_ptr<const TorusTheory>& theory) {
  return scalar_element(theory,
                        Polynomial::variable(theory->coefficient_variables(), theory->hbar_index()));
}

// --- products -------------------------------------------------------------

namespace {

Coweight add_coweights(const Coweight& a, const Coweight& b) {
  Coweight s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
  return s;
}

/// Structure constants of one theory, with the distinct matter forms
/// <a_i,w> + m_i identified so that equal linear factors cancel.
class ProductContext {
 public:
  ProductContext(const TorusTheory& theory, OffsetConvention convention)
      : theory_(theory), half_(convention == OffsetConvention::half_integer) {
    for (std::size_t i = 0; i < theory.matter_count(); ++i) {
      Polynomial f = theory.matter_form(i);
      auto it = std::find(forms_.begin(), forms_.end(), f);
      form_of_.push_back(static_cast<std::size_t>(it - forms_.begin()));
      if (it == forms_.end()) forms_.push_back(std::move(f));
    }
  }

  Polynomial classical_factor(const Coweight& lambda, const Coweight& mu) {
    Polynomial out = Polynomial::constant(theory_.coefficient_variables(), Rational(1));
    for (std::size_t i = 0; i < theory_.matter_count(); ++i) {
      const std::int64_t d = structure_exponent(theory_.matter[i], lambda, mu);
      if (d < 0) throw NonClosureError("negative structure exponent");
      if (d > 0) out = out * forms_[form_of_[i]].pow(static_cast<unsigned>(d));
    }
    return out;
  }

  /// P_lambda * shift_lambda(P_mu) / P_{lambda+mu}, the correction factor
  /// of X_lambda X_mu in the shift-operator model.
  Polynomial quantized_factor(const Coweight& lambda, const Coweight& mu) {
    const Coweight sum = add_coweights(lambda, mu);
    std::multiset<std::pair<std::size_t, Rational>> numerator;
    std::vector<std::pair<std::size_t, Rational>> denominator;
    const Rational delta = half_ ? Rational(1, 2) : Rational(0);
    for (std::size_t i = 0; i < theory_.matter_count(); ++i) {
      const std::size_t f = form_of_[i];
      const std::int64_t x = pairing_value(theory_.matter[i], lambda);
      const std::int64_t y = pairing_value(theory_.matter[i], mu);
      const std::int64_t s = x + y;
      for (std::int64_t k = 0; k < -x; ++k) numerator.emplace(f, -(Rational(k) + delta));
      for (std::int64_t k = 0; k < -y; ++k) numerator.emplace(f, Rational(x) - (Rational(k) + delta));
      for (std::int64_t k = 0; k < -s; ++k) denominator.emplace_back(f, -(Rational(k) + delta));
    }
    for (const auto& factor : denominator) {
      auto it = numerator.find(factor);
      if (it == numerator.end())
        throw NonClosureError("product X" + format_vector(lambda) + " * X" + format_vector(mu) +
                              " leaves the monopole basis");
      numerator.erase(it);
    }
    const std::size_t nv = theory_.coefficient_variables();
    Polynomial out = Polynomial::constant(nv, Rational(1));
    const Polynomial hbar = Polynomial::variable(nv, theory_.hbar_index());
    for (const auto& [f, offset] : numerator) out = out * (forms_[f] + hbar * offset);
    return out;
  }

  Polynomial shift(const Polynomial& p, const Coweight& lambda) const {
    std::vector<Rational> by(theory_.rank);
    bool any = false;
    for (std::size_t j = 0; j < theory_.rank; ++j) {
      by[j] = Rational(static_cast<long>(lambda[j]));
      any = any || lambda[j] != 0;
    }
    return any ? p.translate(by, theory_.hbar_index()) : p;
  }

 private:
  const TorusTheory& theory_;
  bool half_;
  std::vector<Polynomial> forms_;
  std::vector<std::size_t> form_of_;
};

}  // namespace

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, ProductMode mode,
                        OffsetConvention convention) {
  check_same_theory(a, b);
  const TorusTheory& theory = a.theory();
  ProductContext ctx(theory, convention);
  std::map<std::pair<Coweight, Coweight>, Polynomial> factors;
  AlgebraElement out(a.theory_ptr());
  for (const auto& [lambda, c1] : a.terms()) {
    for (const auto& [mu, c2] : b.terms()) {
      auto key = std::make_pair(lambda, mu);
      auto it = factors.find(key);
      if (it == factors.end()) {
        Polynomial f = mode == ProductMode::classical ? ctx.classical_factor(lambda, mu)
                                                      : ctx.quantized_factor(lambda, mu);
        it = factors.emplace(std::move(key), std::move(f)).first;
      }
      const Polynomial moved = mode == ProductMode::classical ? c2 : ctx.shift(c2, lambda);
      out.add(add_coweights(lambda, mu), c1 * moved * it->second);
    }
  }
  return out;
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b, OffsetConvention convention) {
  return multiply(a, b, ProductMode::quantized, convention) -
         multiply(b, a, ProductMode::quantized, convention);
}

AlgebraElement poisson_bracket(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.depends_on_hbar() || b.depends_on_hbar())
    throw std::invalid_argument("poisson_bracket: arguments must be free of hbar");
  const AlgebraElement c = commutator(a, b);
  AlgebraElement out(a.theory_ptr());
  const std::size_t h = a.theory().hbar_index();
  for (const auto& [s, p] : c.terms()) {
    auto q = p.divide_by_variable(h);
    if (!q) throw NonClosureError("commutator coefficient of X" + format_vector(s) + " is not divisible by hbar");
    out.add(s, q->evaluate(h, Rational(0)));
  }
  return out;
}

// --- gradings ---------------------------------------------------------------

Degree degree(const AlgebraElement& e, const GradingSpec& grading) {
  const TorusTheory& theory = e.theory();
  if (grading.mode == GradingSpec::Mode::shifted && grading.shift.size() != theory.rank)
    throw DimensionError("grading shift has length " + std::to_string(grading.shift.size()) +
                         ", expected " + std::to_string(theory.rank));
  InhomogeneousDegree all;
  for (const auto& [sector, c] : e.terms()) {
    Rational base = delta_dimension(theory, sector).to_rational();
    if (grading.mode == GradingSpec::Mode::shifted)
      for (std::size_t j = 0; j < theory.rank; ++j) base += grading.shift[j] * static_cast<long>(sector[j]);
    for (const auto& [exps, coeff] : c.terms()) {
      int d = 0;
      for (int x : exps) d += x;
      all.entries.push_back({sector, exps, base + d});
    }
  }
  if (all.entries.empty()) return Rational(0);
  const Rational first = all.entries.front().degree;
  for (const auto& entry : all.entries)
    if (entry.degree != first) return all;
  return first;
}

std::optional<Coweight> topological_charge(const AlgebraElement& e) {
  if (e.is_zero()) return Coweight(e.theory().rank, 0);
  if (e.terms().size() > 1) return std::nullopt;
  return e.terms().begin()->first;
}

bool FiberWitness::all_nonzero() const {
  return std::all_of(scalars.begin(), scalars.end(), [](const Rational& r) { return r != 0; });
}

FiberWitness generic_fiber_witness(const TorusTheory& theory, const std::vector<Rational>& w0,
                                   const std::vector<Rational>& m0) {
  theory.validate();
  if (w0.size() != theory.rank)
    throw DimensionError("w0 has length " + std::to_string(w0.size()) + ", expected " +
                         std::to_string(theory.rank));
  if (m0.size() != theory.mass_count)
    throw DimensionError("m0 has length " + std::to_string(m0.size()) + ", expected " +
                         std::to_string(theory.mass_count));

  auto specialize = [&](const Polynomial& p) {
    Polynomial q = p.evaluate(theory.hbar_index(), Rational(0));
    for (std::size_t j = 0; j < theory.rank; ++j) q = q.evaluate(j, w0[j]);
    for (std::size_t k = 0; k < theory.mass_count; ++k) q = q.evaluate(theory.mass_index(k), m0[k]);
    return *q.constant_value();
  };

  for (std::size_t i = 0; i < theory.matter_count(); ++i)
    if (specialize(theory.matter_form(i)) == 0)
      throw NonGenericPointError("point lies on the hyperplane <a_" + std::to_string(i) +
                                     ", w> + m_" + std::to_string(i) + " = 0 with a_" +
                                     std::to_string(i) + " = " + format_vector(theory.matter[i]),
                                 i, theory.matter[i]);

  auto shared = std::make_shared<const TorusTheory>(theory);
  FiberWitness witness;
  for (std::size_t j = 0; j < theory.rank; ++j) {
    Coweight e(theory.rank, 0);
    e[j] = 1;
    const AlgebraElement x = monopole_generator(shared, e);
    e[j] = -1;
    const AlgebraElement y = monopole_generator(shared, e);
    const AlgebraElement p = multiply(x, y, ProductMode::classical);
    witness.scalars.push_back(specialize(p.coefficient(Coweight(theory.rank, 0))));
  }
  return witness;
}

}  // namespace coulomb
