#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coulomb/rational.hpp"

namespace coulomb {

/// Dense integer matrix, row-major. Lattices are always Z^k with the
/// standard basis, so every lattice map is one of these.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  /// Builds from nested rows; throws DimensionError if ragged. `cols` is
  /// needed only when `rows` is empty.
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                             std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  std::vector<Integer> row(std::size_t r) const;
  /// Rows as int64 vectors; throws std::overflow_error if an entry does not fit.
  std::vector<std::vector<std::int64_t>> to_rows() const;
  bool is_zero() const;
  bool operator==(const IntMatrix& other) const = default;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact dot product <a, lambda>. Throws DimensionError on length mismatch.
Integer pairing(const std::vector<Integer>& a, const std::vector<Integer>& lambda);
std::int64_t pairing(const Covector& a, const Coweight& lambda);

/// U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix left;      // U
  IntMatrix diagonal;  // D
  IntMatrix right;     // V
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row Hermite normal form of the row lattice: nonzero rows only, positive
/// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_rows(const IntMatrix& m);

struct Cokernel {
  /// Rows form a basis of the saturated left kernel of B; charges * B = 0.
  IntMatrix charges;
  /// Order of the torsion of Z^d / im(B); 1 when the embedding is saturated.
  Integer torsion_index;
  bool saturated() const { return torsion_index == 1; }
};

/// Character lattice of the quotient torus T~/T for an inclusion given by
/// B (d x k). Throws EmbeddingError if B lacks full column rank.
Cokernel cokernel_charges(const IntMatrix& inclusion);

/// Weights of the d coordinates of C^d restricted to T along B: row i of B.
std::vector<Covector> restrict_weights(const IntMatrix& inclusion);

/// 1 -> T -> T~ -> T_F -> 1 together with its dual sequence.
struct DualSequence {
  IntMatrix inclusion;       // B, d x k
  IntMatrix quotient;        // C, (d-k) x d
  IntMatrix dual_inclusion;  // C^T, d x (d-k)
  Integer torsion_index;
};

DualSequence make_dual_sequence(const IntMatrix& inclusion);

/// Primitive integer basis of {x in Z^n : M x = 0}, as rows.
IntMatrix integer_kernel(const IntMatrix& m);

}  // namespace coulomb
