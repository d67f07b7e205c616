#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coulomb/polynomial.hpp"
#include "coulomb/rational.hpp"

namespace coulomb {

/// Torus gauge group (C*)^rank acting on N = C^d through the matter
/// covectors a_1..a_d. Optional flavor covectors f_1..f_d on Z^mass_count
/// attach the mass m_i = <f_i, m> to each matter factor.
struct TorusTheory {
  std::size_t rank = 0;
  std::vector<Covector> matter;
  std::vector<Covector> flavor;
  std::size_t mass_count = 0;

  /// Throws DimensionError on inconsistent covector lengths.
  void validate() const;
  std::size_t matter_count() const { return matter.size(); }
  bool operator==(const TorusTheory&) const = default;

  /// Coefficient ring layout: w_1..w_rank, hbar, m_1..m_mass_count.
  std::size_t coefficient_variables() const { return rank + 1 + mass_count; }
  std::size_t hbar_index() const { return rank; }
  std::size_t mass_index(std::size_t k) const { return rank + 1 + k; }
  /// `w` / `m` when there is a single one, `w1`, `w2`, ... otherwise.
  std::vector<std::string> coefficient_names() const;

  /// <a_i, w> + <f_i, m> as a polynomial in the coefficient ring.
  Polynomial matter_form(std::size_t i) const;
};

/// Returns `theory` with the given flavor covectors (one per matter field).
TorusTheory with_masses(const TorusTheory& theory, std::vector<Covector> flavor);

/// ½ sum_i |<a_i, lambda>|, returned in half units.
HalfInteger delta_dimension(const TorusTheory& theory, const Coweight& lambda);

/// Nonnegative multiplicity of matter field i in X_lambda * X_mu.
std::int64_t structure_exponent(const Covector& a, const Coweight& lambda, const Coweight& mu);

enum class ProductMode { classical, quantized };

/// Offsets of the descending linear factors in the shift-operator model:
/// <a_i,w> + m_i - k*hbar (integer) or - (k + ½)*hbar (half_integer).
enum class OffsetConvention { integer, half_integer };

/// Finite sum of c_lambda(w, hbar, m) * X_lambda over sectors lambda.
class AlgebraElement {
 public:
  using TermMap = std::map<Coweight, Polynomial>;

  explicit AlgebraElement(std::shared_ptr<const TorusTheory> theory);

  const TorusTheory& theory() const { return *theory_; }
  const std::shared_ptr<const TorusTheory>& theory_ptr() const { return theory_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coefficient * X_sector.
  void add(const Coweight& sector, const Polynomial& coefficient);
  /// Coefficient of X_sector (zero polynomial if absent).
  Polynomial coefficient(const Coweight& sector) const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  /// Multiplies every coefficient by p (a central scalar in the classical
  /// ring; in the quantized ring this is left multiplication by p).
  AlgebraElement scaled(const Polynomial& p) const;
  bool operator==(const AlgebraElement& other) const;

  /// Sets hbar = 0 in every coefficient.
  AlgebraElement at_hbar_zero() const;
  bool depends_on_hbar() const;

  /// `(w + hbar) * X[0] + X[1]`, sorted by sector.
  std::string to_string() const;

 private:
  std::shared_ptr<const TorusTheory> theory_;
  TermMap terms_;
};

std::shared_ptr<const TorusTheory> share(TorusTheory theory);

/// X_lambda with coefficient 1.
AlgebraElement monopole_generator(const std::shared_ptr<const TorusTheory>& theory,
                                  const Coweight& lambda);
/// p * X_0.
AlgebraElement scalar_element(const std::shared_ptr<const TorusTheory>& theory, const Polynomial& p);
/// w_j * X_0.
AlgebraElement w_element(const std::shared_ptr<const TorusTheory>& theory, std::size_t j);
AlgebraElement hbar_element(const std::shared_ptr<const TorusTheory>& theory);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, ProductMode mode,
                        OffsetConvention convention = OffsetConvention::integer);

/// ab - ba in the quantized product.
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b,
                          OffsetConvention convention = OffsetConvention::integer);

/// ((ab - ba)/hbar)|_{hbar=0} for hbar-free a, b. Throws std::invalid_argument
/// if an argument involves hbar, NonClosureError if the commutator is not
/// divisible by hbar.
AlgebraElement poisson_bracket(const AlgebraElement& a, const AlgebraElement& b);

struct GradingSpec {
  enum class Mode { delta, shifted };
  Mode mode = Mode::delta;
  std::vector<Rational> shift;  // used when mode == shifted, length = rank

  static GradingSpec delta() { return {}; }
  static GradingSpec shifted(std::vector<Rational> c) { return {Mode::shifted, std::move(c)}; }
};

struct InhomogeneousDegree {
  struct Entry {
    Coweight sector;
    Polynomial::Exponents exponents;
    Rational degree;
  };
  std::vector<Entry> entries;
};

using Degree = std::variant<Rational, InhomogeneousDegree>;

/// deg X_lambda = Delta(lambda) (+ <c, lambda> when shifted); w_j, hbar and
/// masses have degree 1. The zero element has degree 0.
Degree degree(const AlgebraElement& e, const GradingSpec& grading);

/// Common sector of all terms, nullopt when several sectors occur. The zero
/// element has charge 0.
std::optional<Coweight> topological_charge(const AlgebraElement& e);

struct FiberWitness {
  /// X_{e_j} X_{-e_j} at w = w0, m = m0, hbar = 0, one per basis direction.
  std::vector<Rational> scalars;
  bool all_nonzero() const;
};

/// Certifies that the fiber over the generic point (w0, m0) is the dual
/// torus. Throws NonGenericPointError naming the vanishing hyperplane.
FiberWitness generic_fiber_witness(const TorusTheory& theory, const std::vector<Rational>& w0,
                                   const std::vector<Rational>& m0);

}  // namespace coulomb
