#include "coulomb/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "coulomb/errors.hpp"

namespace coulomb {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                               std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw DimensionError("ragged matrix: row " + std::to_string(r) + " has length " +
                           std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Integer& v = (*this)(r, c);
      if (!v.fits_slong_p()) throw std::overflow_error("matrix entry does not fit in int64");
      out[r][c] = v.get_si();
    }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("matrix product: " + std::to_string(a.rows_) + "x" +
                         std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
                         std::to_string(b.cols_));
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

Integer pairing(const std::vector<Integer>& a, const std::vector<Integer>& lambda) {
  if (a.size() != lambda.size())
    throw DimensionError("pairing: covector has length " + std::to_string(a.size()) +
                         " but vector has length " + std::to_string(lambda.size()));
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * lambda[i];
  return s;
}

std::int64_t pairing(const Covector& a, const Coweight& lambda) { return pairing_value(a, lambda); }

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row_dst += q * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += q * m(src, c);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += q * m(r, src);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
    if (diagonal(i, i) != 0) ++r;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) return {std::move(u), std::move(d), std::move(v)};
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = -floor_div(d(i, t), d(t, t));
        add_row(d, i, t, q);
        add_row(u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = -floor_div(d(t, j), d(t, t));
        add_col(d, j, t, q);
        add_col(v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility d_t | d_{t+1}: fold an offending row into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            add_row(d, t, i, Integer(1));
            add_row(u, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    // Euclid on column c among rows >= pivot_row.
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t r = pivot_row; r < h.rows(); ++r)
        if (h(r, c) != 0 && (best == h.rows() || abs(h(r, c)) < abs(h(best, c)))) best = r;
      if (best == h.rows()) break;
      swap_rows(h, pivot_row, best);
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < h.rows(); ++r) {
        if (h(r, c) == 0) continue;
        add_row(h, r, pivot_row, -floor_div(h(r, c), h(pivot_row, c)));
        if (h(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0)
      for (std::size_t k = 0; k < h.cols(); ++k) h(pivot_row, k) = -h(pivot_row, k);
    for (std::size_t r = 0; r < pivot_row; ++r)
      add_row(h, r, pivot_row, -floor_div(h(r, c), h(pivot_row, c)));
    ++pivot_row;
  }
  IntMatrix out(pivot_row, h.cols());
  for (std::size_t r = 0; r < pivot_row; ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) out(r, c) = h(r, c);
  return out;
}

Cokernel cokernel_charges(const IntMatrix& inclusion) {
  const SmithForm snf = smith_normal_form(inclusion);
  const std::size_t k = inclusion.cols(), d = inclusion.rows();
  const std::size_t r = snf.rank();
  if (r < k)
    throw EmbeddingError("inclusion matrix " + inclusion.to_string() + " has rank " +
                         std::to_string(r) + " < " + std::to_string(k) +
                         " columns; not a torus embedding");
  Integer index = 1;
  for (std::size_t i = 0; i < r; ++i) index *= snf.diagonal(i, i);
  IntMatrix kernel(d - r, d);
  for (std::size_t i = r; i < d; ++i)
    for (std::size_t c = 0; c < d; ++c) kernel(i - r, c) = snf.left(i, c);
  IntMatrix charges = kernel.rows() ? hermite_rows(kernel) : kernel;
  return {std::move(charges), std::move(index)};
}

std::vector<Covector> restrict_weights(const IntMatrix& inclusion) { return inclusion.to_rows(); }

DualSequence make_dual_sequence(const IntMatrix& inclusion) {
  Cokernel ck = cokernel_charges(inclusion);
  IntMatrix dual = ck.charges.transpose();
  return {inclusion, std::move(ck.charges), std::move(dual), std::move(ck.torsion_index)};
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  const std::size_t n = m.cols(), r = snf.rank();
  IntMatrix basis(n - r, n);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) basis(j - r, i) = snf.right(i, j);
  return basis.rows() ? hermite_rows(basis) : basis;
}

}  // namespace coulomb
