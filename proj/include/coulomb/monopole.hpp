#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coulomb/abelian.hpp"
#include "coulomb/rational.hpp"
#include "coulomb/series.hpp"

namespace coulomb {

struct GaugeFactor {
  enum class Kind { gl, torus };
  Kind kind = Kind::torus;
  std::size_t rank = 0;
};

/// Product of GL(n) and torus factors with matter given by weights of the
/// maximal torus. Coweights are concatenated over the factors in order.
struct NonabelianTheory {
  std::vector<GaugeFactor> factors;
  std::vector<Covector> matter;

  std::size_t rank() const;
  /// First coordinate of factor f.
  std::size_t offset(std::size_t f) const;
  /// e_a - e_b, a < b, within each GL block.
  std::vector<Covector> positive_roots() const;
  /// Number of fugacities: one per GL factor, rank many per torus factor.
  std::size_t fugacity_count() const;
  void validate() const;

  static NonabelianTheory from_torus(const TorusTheory& theory);
};

/// Quiver with dimension vector v and framing w. Edge (out, in) carries
/// Hom(V_out, V_in).
struct QuiverData {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::int64_t> v, w;
  void validate() const;
};

NonabelianTheory quiver_to_theory(const QuiverData& quiver);

/// 1/2 sum_rho |<rho, lambda>| - sum_{alpha > 0} |<alpha, lambda>|.
HalfInteger monopole_delta(const NonabelianTheory& theory, const Coweight& lambda);

/// Entries weakly decreasing within every GL block.
bool is_dominant(const NonabelianTheory& theory, const Coweight& lambda);

/// prod over Casimir degrees d of the stabilizer of lambda of 1/(1 - q^d).
GradedSeries dressing_factor(const NonabelianTheory& theory, const Coweight& lambda, HalfInteger order);

/// pi_1 class of lambda: sum of entries per GL factor, lambda itself per torus.
std::vector<std::int64_t> fugacity_class(const NonabelianTheory& theory, const Coweight& lambda);

/// Every dominant coweight with Delta <= order, with a certified search
/// radius. Throws DivergenceError (with witness) if some lambda != 0 has
/// Delta <= 0 or the radius cannot be certified.
std::vector<Coweight> dominant_coweights_up_to(const NonabelianTheory& theory, HalfInteger order);

GradedSeries monopole_hilbert_series(const NonabelianTheory& theory, HalfInteger order,
                                     bool include_fugacities = false);

/// Counts graded_basis elements degree by degree.
GradedSeries algebra_hilbert_series(const TorusTheory& theory, HalfInteger order);

}  // namespace coulomb
