#include "coulomb/monopole.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>

#include "coulomb/errors.hpp"
#include "coulomb/lattice.hpp"
#include "coulomb/presentation.hpp"

namespace coulomb {

std::size_t NonabelianTheory::rank() const {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.rank;
  return n;
}

std::size_t NonabelianTheory::offset(std::size_t f) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < f; ++i) n += factors[i].rank;
  return n;
}

std::vector<Covector> NonabelianTheory::positive_roots() const {
  std::vector<Covector> roots;
  const std::size_t n = rank();
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (factors[f].kind != GaugeFactor::Kind::gl) continue;
    const std::size_t o = offset(f);
    for (std::size_t a = 0; a < factors[f].rank; ++a)
      for (std::size_t b = a + 1; b < factors[f].rank; ++b) {
        Covector r(n, 0);
        r[o + a] = 1;
        r[o + b] = -1;
        roots.push_back(r);
      }
  }
  return roots;
}

std::size_t NonabelianTheory::fugacity_count() const {
  std::size_t k = 0;
  for (const auto& f : factors) k += f.kind == GaugeFactor::Kind::gl ? 1 : f.rank;
  return k;
}

void NonabelianTheory::validate() const {
  const std::size_t n = rank();
  for (std::size_t i = 0; i < matter.size(); ++i)
    if (matter[i].size() != n)
      throw DimensionError("matter weight " + std::to_string(i) + " has length " + std::to_string(matter[i].size()) +
                           ", expected " + std::to_string(n));
}

NonabelianTheory NonabelianTheory::from_torus(const TorusTheory& theory) {
  theory.validate();
  NonabelianTheory t;
  if (theory.rank > 0) t.factors.push_back({GaugeFactor::Kind::torus, theory.rank});
  t.matter = theory.matter;
  return t;
}

void QuiverData::validate() const {
  if (v.size() != vertices || w.size() != vertices)
    throw DimensionError("quiver: v and w must have one entry per vertex");
  for (std::size_t i = 0; i < vertices; ++i)
    if (v[i] < 0 || w[i] < 0) throw DimensionError("quiver: dimensions must be nonnegative");
  for (const auto& [out, in] : edges)
    if (out >= vertices || in >= vertices) throw DimensionError("quiver: edge endpoint out of range");
}

NonabelianTheory quiver_to_theory(const QuiverData& q) {
  q.validate();
  NonabelianTheory t;
  std::vector<std::size_t> offset(q.vertices);
  std::size_t n = 0;
  for (std::size_t i = 0; i < q.vertices; ++i) {
    offset[i] = n;
    n += static_cast<std::size_t>(q.v[i]);
    t.factors.push_back({GaugeFactor::Kind::gl, static_cast<std::size_t>(q.v[i])});
  }
  for (const auto& [out, in] : q.edges)
    for (std::int64_t a = 0; a < q.v[in]; ++a)
      for (std::int64_t b = 0; b < q.v[out]; ++b) {
        Covector wt(n, 0);
        wt[offset[in] + static_cast<std::size_t>(a)] += 1;
        wt[offset[out] + static_cast<std::size_t>(b)] -= 1;
        t.matter.push_back(wt);
      }
  for (std::size_t i = 0; i < q.vertices; ++i)
    for (std::int64_t copy = 0; copy < q.w[i]; ++copy)
      for (std::int64_t a = 0; a < q.v[i]; ++a) {
        Covector wt(n, 0);
        wt[offset[i] + static_cast<std::size_t>(a)] = 1;
        t.matter.push_back(wt);
      }
  return t;
}

namespace {

std::int64_t dot(const Covector& a, const Coweight& l) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * l[j];
  return s;
}

// Delta in half units, with roots precomputed.
std::int64_t delta_half_units(const NonabelianTheory& t, const std::vector<Covector>& roots, const Coweight& l) {
  std::int64_t h = 0;
  for (const auto& rho : t.matter) h += std::abs(dot(rho, l));
  for (const auto& alpha : roots) h -= 2 * std::abs(dot(alpha, l));
  return h;
}

// Calls f on every dominant coweight with lo <= |lambda|_1 <= hi.
void for_each_dominant(const NonabelianTheory& t, std::int64_t lo, std::int64_t hi,
                       const std::function<void(const Coweight&)>& f) {
  const std::size_t n = t.rank();
  // Upper bound on the entry at each coordinate from the block structure.
  std::vector<bool> block_start(n, true);
  for (std::size_t fi = 0; fi < t.factors.size(); ++fi)
    if (t.factors[fi].kind == GaugeFactor::Kind::gl)
      for (std::size_t a = 1; a < t.factors[fi].rank; ++a) block_start[t.offset(fi) + a] = false;
  Coweight l(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t j, std::int64_t used) {
    if (j == n) {
      if (used >= lo) f(l);
      return;
    }
    const std::int64_t budget = hi - used;
    const std::int64_t top = block_start[j] ? budget : std::min(budget, l[j - 1]);
    for (std::int64_t x = top; x >= -budget; --x) {
      l[j] = x;
      rec(j + 1, used + std::abs(x));
    }
  };
  rec(0, 0);
}

}  // namespace

HalfInteger monopole_delta(const NonabelianTheory& theory, const Coweight& lambda) {
  theory.validate();
  if (lambda.size() != theory.rank()) throw DimensionError("coweight has the wrong length");
  return HalfInteger::from_half_units(delta_half_units(theory, theory.positive_roots(), lambda));
}

bool is_dominant(const NonabelianTheory& theory, const Coweight& lambda) {
  for (std::size_t f = 0; f < theory.factors.size(); ++f) {
    if (theory.factors[f].kind != GaugeFactor::Kind::gl) continue;
    const std::size_t o = theory.offset(f);
    for (std::size_t a = 1; a < theory.factors[f].rank; ++a)
      if (lambda[o + a - 1] < lambda[o + a]) return false;
  }
  return true;
}

GradedSeries dressing_factor(const NonabelianTheory& theory, const Coweight& lambda, HalfInteger order) {
  GradedSeries out = GradedSeries::one(order);
  for (std::size_t f = 0; f < theory.factors.size(); ++f) {
    const GaugeFactor& g = theory.factors[f];
    if (g.kind == GaugeFactor::Kind::torus) {
      out = out * GradedSeries::geometric(order, 2).pow(static_cast<unsigned>(g.rank));
      continue;
    }
    // Stabilizer of lambda in GL(n): a GL(b) for each run of b equal entries.
    std::vector<std::int64_t> block(lambda.begin() + static_cast<std::ptrdiff_t>(theory.offset(f)),
                                    lambda.begin() + static_cast<std::ptrdiff_t>(theory.offset(f) + g.rank));
    std::sort(block.begin(), block.end());
    for (std::size_t a = 0; a < block.size();) {
      std::size_t b = a;
      while (b < block.size() && block[b] == block[a]) ++b;
      for (std::size_t d = 1; d <= b - a; ++d) out = out * GradedSeries::geometric(order, 2 * static_cast<std::int64_t>(d));
      a = b;
    }
  }
  return out;
}

std::vector<std::int64_t> fugacity_class(const NonabelianTheory& theory, const Coweight& lambda) {
  std::vector<std::int64_t> out;
  for (std::size_t f = 0; f < theory.factors.size(); ++f) {
    const std::size_t o = theory.offset(f);
    if (theory.factors[f].kind == GaugeFactor::Kind::gl) {
      std::int64_t s = 0;
      for (std::size_t a = 0; a < theory.factors[f].rank; ++a) s += lambda[o + a];
      out.push_back(s);
    } else {
      for (std::size_t a = 0; a < theory.factors[f].rank; ++a) out.push_back(lambda[o + a]);
    }
  }
  return out;
}

std::vector<Coweight> dominant_coweights_up_to(const NonabelianTheory& theory, HalfInteger order) {
  theory.validate();
  const std::size_t n = theory.rank();
  if (n == 0) return {Coweight{}};
  const auto roots = theory.positive_roots();
  const std::int64_t bound = order.half_units();

  // Delta is linear on every chamber of the arrangement cut out by matter
  // weights and roots, so on a pointed chamber with rays r_k,
  // Delta(lambda) >= min_k Delta(r_k)/|r_k|_1 * |lambda|_1. The rays are
  // lines where n-1 independent hyperplanes meet.
  std::vector<Covector> normals;
  for (const auto& v : theory.matter)
    if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; })) normals.push_back(v);
  normals.insert(normals.end(), roots.begin(), roots.end());

  const IntMatrix all = IntMatrix::from_rows(normals, n);
  if (normals.empty() || smith_normal_form(all).rank() < n) {
    Coweight flat = normals.empty() ? Coweight(n, 0) : integer_kernel(all).to_rows().front();
    if (normals.empty()) flat[0] = 1;
    throw DivergenceError("Delta vanishes on " + format_vector(flat) + "; the monopole formula diverges", flat);
  }

  std::optional<Rational> slope;  // min 2*Delta(r) / |r|_1
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pick.size() + 1 == n) {
      std::vector<Covector> rows;
      for (auto i : pick) rows.push_back(normals[i]);
      const IntMatrix kernel = integer_kernel(IntMatrix::from_rows(rows, n));
      if (kernel.rows() != 1) return;
      Coweight r = kernel.to_rows().front();
      for (int sign : {1, -1}) {
        if (sign < 0)
          for (auto& x : r) x = -x;
        if (!is_dominant(theory, r)) continue;
        const std::int64_t d = delta_half_units(theory, roots, r);
        if (d <= 0)
          throw DivergenceError("Delta(" + format_vector(r) + ") = " + HalfInteger::from_half_units(d).to_string() +
                                    " <= 0; the monopole formula diverges",
                                r);
        std::int64_t norm = 0;
        for (auto x : r) norm += std::abs(x);
        const Rational ratio(d, norm);
        if (!slope || ratio < *slope) slope = ratio;
      }
      return;
    }
    for (std::size_t i = start; i < normals.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  if (!slope) throw std::logic_error("dominant_coweights_up_to: no rays found");

  const Rational limit = Rational(bound) / *slope;
  Integer radius;
  mpz_fdiv_q(radius.get_mpz_t(), limit.get_num_mpz_t(), limit.get_den_mpz_t());

  std::vector<Coweight> out;
  for_each_dominant(theory, 0, radius.get_si(), [&](const Coweight& l) {
    if (delta_half_units(theory, roots, l) <= bound) out.push_back(l);
  });
  std::sort(out.begin(), out.end());
  return out;
}

GradedSeries monopole_hilbert_series(const NonabelianTheory& theory, HalfInteger order, bool include_fugacities) {
  const std::size_t k = include_fugacities ? theory.fugacity_count() : 0;
  GradedSeries out(order, k);
  const auto roots = theory.positive_roots();
  for (const Coweight& l : dominant_coweights_up_to(theory, order)) {
    const std::int64_t d = delta_half_units(theory, roots, l);
    const GradedSeries dressing = dressing_factor(theory, l, order);
    const auto f = include_fugacities ? fugacity_class(theory, l) : std::vector<std::int64_t>{};
    for (const auto& [key, c] : dressing.terms()) out.add_term(key.half_units + d, f, c);
  }
  return out;
}

GradedSeries algebra_hilbert_series(const TorusTheory& theory, HalfInteger order) {
  GradedSeries out(order, 0);
  for (const auto& b : graded_basis(theory, order)) out.add_term(b.degree.half_units(), {}, 1);
  return out;
}

}  // namespace coulomb
