#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/abelian.hpp"
#include "coulomb/polynomial.hpp"
#include "coulomb/rational.hpp"

namespace coulomb {

/// Coweights lambda with Delta(lambda) <= bound, lexicographically sorted.
/// Throws DivergenceError (witness: a coweight with Delta = 0) unless the
/// matter covectors span the character lattice rationally.
std::vector<Coweight> sectors_up_to(const TorusTheory& theory, HalfInteger bound);

/// A nonzero coweight with Delta = 0, if one exists.
std::optional<Coweight> flat_direction(const TorusTheory& theory);

/// Basis monomial w^alpha X_lambda of the classical Coulomb branch ring.
struct BasisMonomial {
  Polynomial::Exponents w_exponents;
  Coweight sector;
  HalfInteger degree;
  bool operator==(const BasisMonomial&) const = default;
};

/// All w^alpha X_lambda with Delta(lambda) + |alpha| <= bound, ordered by
/// degree, then sector, then alpha.
std::vector<BasisMonomial> graded_basis(const TorusTheory& theory, HalfInteger bound);

struct Generator {
  enum class Kind { w, monopole };
  std::string name;
  Kind kind = Kind::monopole;
  std::size_t w_index = 0;  // Kind::w
  Coweight sector;          // Kind::monopole
  HalfInteger degree;
  /// The generator stands for scale * w_j or scale * X_sector.
  Rational scale = 1;
};

/// Generators and relations of the (mass-free, classical) Coulomb branch
/// ring. Relations are polynomials in the generators, one variable per
/// generator, each monic for the presentation monomial order.
struct Presentation {
  TorusTheory theory;
  std::vector<Generator> generators;
  std::vector<Polynomial> relations;
  HalfInteger degree_bound;
  /// Whether generator monomials span every graded piece up to degree_bound.
  bool surjective = true;
  std::vector<BasisMonomial> missed;

  std::vector<std::string> generator_names() const;
  /// A relation with terms in decreasing presentation order, e.g. `x*y - w^2`.
  std::string relation_string(const Polynomial& relation) const;
  /// `ring C[w, x, y] / (x*y - w)`
  std::string to_string() const;
};

/// Presentation order on generator monomials: larger degree, then larger
/// total monopole exponent, then lexicographically larger exponent vector
/// (generators are listed w's first).
bool presentation_order_greater(const Polynomial::Exponents& a, const Polynomial::Exponents& b,
                                const std::vector<Generator>& generators);

/// All sectors gamma != 0 with Delta(gamma) <= max_j Delta(+-e_j), plus +-e_j.
std::vector<Coweight> default_generator_sectors(const TorusTheory& theory);

/// Finds all relations among w_1..w_n and X_gamma (gamma in `sectors`) up to
/// `bound`, degree by degree, by exact kernel computation. Masses are set to
/// zero. Throws DivergenceError if positivity fails.
Presentation find_relations(const TorusTheory& theory, const std::vector<Coweight>& sectors,
                            HalfInteger bound);

/// Eliminates w generators that some relation expresses linearly in terms of
/// the others (e.g. w = x*y), dropping that relation.
Presentation minimal_presentation(const Presentation& p);

struct VerificationReport {
  bool relations_vanish = true;
  bool dimensions_match = true;
  /// (degree, dimension of the presented ring, dimension of the graded basis)
  std::vector<std::tuple<HalfInteger, std::size_t, std::size_t>> dimensions;
  std::vector<std::string> failures;
  bool passed() const { return relations_vanish && dimensions_match; }
};

/// Re-evaluates every relation through the product and compares graded
/// dimensions of the presented ring with the graded basis up to the bound.
VerificationReport verify_presentation(const Presentation& p);

}  // namespace coulomb
