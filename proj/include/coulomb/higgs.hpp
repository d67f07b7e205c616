#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "coulomb/lattice.hpp"
#include "coulomb/rational.hpp"
#include "coulomb/series.hpp"

namespace coulomb {

/// Torus of rank r acting on C^d with charges c_i (hence on C^d + (C^d)*).
struct HiggsInput {
  std::size_t gauge_rank = 0;
  std::vector<Covector> charges;
  void validate() const;
};

/// Constant term in z of (1-q)^r prod_i 1/((1 - q^{1/2} z^{c_i})(1 - q^{1/2} z^{-c_i})).
GradedSeries higgs_hilbert_series(const HiggsInput& input, HalfInteger order);

/// Brute-force count of the graded pieces of C[x, y]^T / (moment map),
/// entry k = degree k/2, up to `order`. Exact ranks; exponential in d.
std::vector<Integer> higgs_invariant_counts(const HiggsInput& input, HalfInteger order);

struct DualityReport {
  enum class Status { equal, mismatch };
  Status status = Status::equal;
  HalfInteger order_checked;
  std::optional<HalfInteger> first_mismatch;
  GradedSeries coulomb, higgs;
  /// Order through which the Molien series was compared with the brute-force
  /// invariant count, and whether they agreed.
  HalfInteger flatness_checked;
  bool molien_agrees = true;

  /// {"status", "order_checked", "first_mismatch"?, ...}; numbers as strings.
  nlohmann::json to_json() const;
};

/// Coulomb series of the torus theory with matter = rows of B against the
/// Higgs series of the dual torus (charges = cokernel of B).
DualityReport duality_check(const IntMatrix& B, HalfInteger order);

}  // namespace coulomb
