#pragma once

#include <stdexcept>
#include <string>

#include "coulomb/rational.hpp"

namespace coulomb {

/// Inputs of inconsistent shape (covector lengths, sector dimension, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A graded piece or a lattice sum is infinite: some nonzero coweight has
/// non-positive monopole dimension. `witness` is such a coweight.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, Coweight witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const Coweight& witness() const { return witness_; }

 private:
  Coweight witness_;
};

/// A torus inclusion matrix without full column rank.
class EmbeddingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal invariant violation: a product left the monopole basis or a
/// commutator was not divisible by hbar.
class NonClosureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A specialization point lying on a matter hyperplane <a_i, w> + m_i = 0.
class NonGenericPointError : public std::invalid_argument {
 public:
  NonGenericPointError(const std::string& what, std::size_t matter_index,
                       Covector hyperplane)
      : std::invalid_argument(what),
        matter_index_(matter_index),
        hyperplane_(std::move(hyperplane)) {}
  std::size_t matter_index() const { return matter_index_; }
  const Covector& hyperplane() const { return hyperplane_; }

 private:
  std::size_t matter_index_;
  Covector hyperplane_;
};

std::string format_vector(const Coweight& v);

}  // namespace coulomb
