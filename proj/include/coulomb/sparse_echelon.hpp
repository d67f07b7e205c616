#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "coulomb/rational.hpp"

namespace coulomb {

/// Sparse integer vector, entries sorted by ascending column, no zeros.
/// The leading entry is the one with the smallest column.
using SparseVector = std::vector<std::pair<std::size_t, Integer>>;

/// Divides by the content and makes the leading entry positive.
void make_primitive(SparseVector& v);

/// Clears denominators of a rational vector and makes it primitive.
SparseVector to_primitive(const std::map<std::size_t, Rational>& v);

/// a*x - b*y, entrywise.
SparseVector combine(const Integer& a, const SparseVector& x, const Integer& b, const SparseVector& y);

/// Incremental row echelon basis over Z with primitive rows. Elimination is
/// fraction-free: a row is reduced against a pivot by cross-multiplying the
/// two leading coefficients (divided by their gcd) and then removing content.
class FractionFreeEchelon {
 public:
  /// Reduces until the leading column has no pivot (or v vanishes).
  SparseVector reduce_leading(SparseVector v) const;
  /// Reduces every entry that sits on a pivot column.
  SparseVector reduce_fully(SparseVector v) const;
  /// Inserts v if it is independent of the current rows; returns whether it was.
  bool insert(SparseVector v);
  /// Inserts a vector already reduced by reduce_leading (nonzero, leading
  /// column free).
  void insert_reduced(SparseVector v);

  std::size_t rank() const { return pivots_.size(); }
  bool has_pivot(std::size_t column) const { return pivots_.count(column) != 0; }
  const std::map<std::size_t, SparseVector>& pivots() const { return pivots_; }

 private:
  std::map<std::size_t, SparseVector> pivots_;
};

}  // namespace coulomb
