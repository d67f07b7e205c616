#include "coulomb/sparse_echelon.hpp"

#include <stdexcept>

namespace coulomb {

void make_primitive(SparseVector& v) {
  if (v.empty()) return;
  Integer g = 0;
  for (const auto& [c, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g == 1) return;
  for (auto& [c, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

SparseVector to_primitive(const std::map<std::size_t, Rational>& v) {
  Integer lcm = 1;
  for (const auto& [c, x] : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  SparseVector out;
  out.reserve(v.size());
  for (const auto& [c, x] : v) {
    if (x == 0) continue;
    Integer scaled = x.get_num() * (lcm / x.get_den());
    out.emplace_back(c, std::move(scaled));
  }
  make_primitive(out);
  return out;
}

SparseVector combine(const Integer& a, const SparseVector& x, const Integer& b, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

// Eliminates the entry of `v` at the pivot's leading column.
SparseVector eliminate(const SparseVector& v, const Integer& entry, const SparseVector& pivot) {
  const Integer& lead = pivot.front().second;
  Integer g;
  mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), entry.get_mpz_t());
  SparseVector out = combine(lead / g, v, entry / g, pivot);
  make_primitive(out);
  return out;
}

}  // namespace

SparseVector FractionFreeEchelon::reduce_leading(SparseVector v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    Integer entry = v.front().second;
    v = eliminate(v, entry, it->second);
  }
  return v;
}

SparseVector FractionFreeEchelon::reduce_fully(SparseVector v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivots_.find(v[pos].first);
    if (it == pivots_.end()) {
      ++pos;
      continue;
    }
    const std::size_t column = v[pos].first;
    Integer entry = v[pos].second;
    v = eliminate(v, entry, it->second);
    // Entries before `column` are untouched by the pivot (its support starts
    // at `column`), so resume at the first entry past it.
    pos = 0;
    while (pos < v.size() && v[pos].first <= column) ++pos;
  }
  return v;
}

bool FractionFreeEchelon::insert(SparseVector v) {
  v = reduce_leading(std::move(v));
  if (v.empty()) return false;
  insert_reduced(std::move(v));
  return true;
}

void FractionFreeEchelon::insert_reduced(SparseVector v) {
  if (v.empty() || pivots_.count(v.front().first))
    throw std::logic_error("insert_reduced: vector is zero or not reduced");
  make_primitive(v);
  const std::size_t lead = v.front().first;
  pivots_.emplace(lead, std::move(v));
}

}  // namespace coulomb
