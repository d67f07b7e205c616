// Test-only oracles. Nothing here calls into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Truncated univariate series in t = q^{1/2}; index = half units.
struct HalfSeries {
  std::vector<mpq_class> c;

  explicit HalfSeries(std::size_t max_half_units) : c(max_half_units + 1) {}

  static HalfSeries polynomial(std::size_t n, const std::map<int, long>& terms) {
    HalfSeries s(n);
    for (auto [e, v] : terms)
      if (static_cast<std::size_t>(e) <= n) s.c[e] += v;
    return s;
  }

  HalfSeries operator*(const HalfSeries& o) const {
    HalfSeries r(c.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; i + j < c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }

  // Power-series inverse; requires c[0] != 0.
  HalfSeries inverse() const {
    HalfSeries r(c.size() - 1);
    r.c[0] = 1 / c[0];
    for (std::size_t n = 1; n < c.size(); ++n) {
      mpq_class s = 0;
      for (std::size_t k = 1; k <= n; ++k) s += c[k] * r.c[n - k];
      r.c[n] = -s / c[0];
    }
    return r;
  }

  HalfSeries pow(unsigned k) const {
    HalfSeries r = polynomial(c.size() - 1, {{0, 1}});
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }
};

inline mpz_class binomial(long n, long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// 1 - t^e as a series with n half units.
inline HalfSeries one_minus(std::size_t n, int half_units) {
  return HalfSeries::polynomial(n, {{0, 1}, {half_units, -1}});
}

// Determinant by cofactor expansion. Small matrices only.
inline mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class det = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col] == 0) continue;
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    mpz_class term = m[0][col] * cofactor_det(minor);
    det += (col % 2 ? -term : term);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Determinantal divisors: gcd of all k x k minors, k = 1..min(rows, cols).
// The Smith invariants are d_k = D_k / D_{k-1}.
inline std::vector<mpz_class> smith_invariants_by_minors(const std::vector<std::vector<long>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> divisors{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        mpz_class d = cofactor_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    divisors.push_back(g);
  }
  std::vector<mpz_class> inv;
  for (std::size_t k = 1; k < divisors.size(); ++k)
    inv.push_back(divisors[k] == 0 ? mpz_class(0) : mpz_class(divisors[k] / divisors[k - 1]));
  return inv;
}

inline std::vector<std::vector<std::int64_t>> random_matrix(std::mt19937_64& rng, std::size_t rows,
                                                            std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

}  // namespace oracle
