#include "coulomb/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "coulomb/errors.hpp"
#include "coulomb/lattice.hpp"
#include "coulomb/sparse_echelon.hpp"

namespace coulomb {

// --- sectors and the graded basis -------------------------------------------

std::optional<Coweight> flat_direction(const TorusTheory& theory) {
  const IntMatrix a = IntMatrix::from_rows(theory.matter, theory.rank);
  const IntMatrix kernel = integer_kernel(a);
  if (kernel.rows() == 0) return std::nullopt;
  return kernel.to_rows().front();
}

namespace {

// Max absolute row sum of the inverse of the square submatrix on `rows`, or
// nullopt if it is singular. Exact Gauss-Jordan over Q.
std::optional<Rational> inverse_row_norm(const TorusTheory& theory, const std::vector<std::size_t>& rows) {
  const std::size_t n = theory.rank;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(static_cast<long>(theory.matter[rows[i]][j]));
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    const Rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Rational best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += abs(m[i][n + j]);
    best = std::max(best, s);
  }
  return best;
}

// |lambda_j| <= M * ||A_S lambda||_1 <= M * 2 Delta(lambda) for any
// invertible n x n submatrix A_S, M its inverse's max row sum.
std::int64_t coordinate_bound(const TorusTheory& theory, HalfInteger bound) {
  std::optional<Rational> best;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pick.size() == theory.rank) {
      auto m = inverse_row_norm(theory, pick);
      if (m && (!best || *m < *best)) best = m;
      return;
    }
    for (std::size_t i = start; i < theory.matter.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  if (!best) throw std::logic_error("coordinate_bound: matter does not have full rank");
  Rational limit = *best * static_cast<long>(bound.half_units());
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), limit.get_num_mpz_t(), limit.get_den_mpz_t());
  return fl.get_si();
}

void check_positive(const TorusTheory& theory) {
  if (auto flat = flat_direction(theory))
    throw DivergenceError("Delta vanishes on the nonzero coweight " + format_vector(*flat) +
                              "; graded pieces are infinite-dimensional",
                          *flat);
}

}  // namespace

std::vector<Coweight> sectors_up_to(const TorusTheory& theory, HalfInteger bound) {
  theory.validate();
  if (bound.half_units() < 0) return {};
  if (theory.rank == 0) return {Coweight{}};
  check_positive(theory);
  const std::int64_t box = coordinate_bound(theory, bound);
  std::vector<Coweight> out;
  Coweight lambda(theory.rank, -box);
  for (;;) {
    if (delta_dimension(theory, lambda) <= bound) out.push_back(lambda);
    std::size_t j = theory.rank;
    while (j > 0 && lambda[j - 1] == box) lambda[--j] = -box;
    if (j == 0) break;
    ++lambda[j - 1];
  }
  return out;
}

namespace {

void compositions(std::size_t vars, int total, Polynomial::Exponents& cur, std::size_t pos,
                  std::vector<Polynomial::Exponents>& out) {
  if (pos + 1 == vars) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur[pos] = k;
    compositions(vars, total - k, cur, pos + 1, out);
  }
}

// Exponent vectors of the given total degree, lexicographically decreasing.
std::vector<Polynomial::Exponents> exponents_of_degree(std::size_t vars, int total) {
  std::vector<Polynomial::Exponents> out;
  if (vars == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  Polynomial::Exponents cur(vars, 0);
  compositions(vars, total, cur, 0, out);
  return out;
}

}  // namespace

std::vector<BasisMonomial> graded_basis(const TorusTheory& theory, HalfInteger bound) {
  std::vector<BasisMonomial> out;
  for (const Coweight& lambda : sectors_up_to(theory, bound)) {
    const HalfInteger d = delta_dimension(theory, lambda);
    for (int k = 0; d.half_units() + 2 * k <= bound.half_units(); ++k)
      for (auto& alpha : exponents_of_degree(theory.rank, k))
        out.push_back({std::move(alpha), lambda, d + HalfInteger::from_integer(k)});
  }
  std::stable_sort(out.begin(), out.end(), [](const BasisMonomial& a, const BasisMonomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.sector < b.sector;
  });
  return out;
}

// --- generators and monomials ------------------------------------------------

std::vector<std::string> Presentation::generator_names() const {
  std::vector<std::string> names;
  for (const auto& g : generators) names.push_back(g.name);
  return names;
}

std::string Presentation::relation_string(const Polynomial& relation) const {
  if (relation.is_zero()) return "0";
  std::vector<Polynomial::Exponents> order;
  for (const auto& [e, c] : relation.terms()) order.push_back(e);
  std::sort(order.begin(), order.end(),
            [&](const auto& a, const auto& b) { return presentation_order_greater(a, b, generators); });
  const auto names = generator_names();
  std::string s;
  for (const auto& e : order) {
    const std::string term = Polynomial::monomial(e, relation.terms().at(e)).to_string(names);
    if (s.empty()) s = term;
    else if (term.front() == '-') s += " - " + term.substr(1);
    else s += " + " + term;
  }
  return s;
}

std::string Presentation::to_string() const {
  std::string s = "ring C[";
  const auto names = generator_names();
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  s += "] / (";
  for (std::size_t i = 0; i < relations.size(); ++i) s += (i ? ", " : "") + relation_string(relations[i]);
  return s + ")";
}

bool presentation_order_greater(const Polynomial::Exponents& a, const Polynomial::Exponents& b,
                                const std::vector<Generator>& generators) {
  std::int64_t da = 0, db = 0;
  int xa = 0, xb = 0;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    da += a[k] * generators[k].degree.half_units();
    db += b[k] * generators[k].degree.half_units();
    if (generators[k].kind == Generator::Kind::monopole) {
      xa += a[k];
      xb += b[k];
    }
  }
  if (da != db) return da > db;
  if (xa != xb) return xa > xb;
  return a > b;
}

std::vector<Coweight> default_generator_sectors(const TorusTheory& theory) {
  check_positive(theory);
  HalfInteger top;
  std::vector<Coweight> out;
  for (std::size_t j = 0; j < theory.rank; ++j)
    for (int sign : {1, -1}) {
      Coweight e(theory.rank, 0);
      e[j] = sign;
      top = std::max(top, delta_dimension(theory, e));
      out.push_back(e);
    }
  for (const Coweight& g : sectors_up_to(theory, top)) {
    if (std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; })) continue;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

namespace {

std::string monopole_name(const TorusTheory& theory, const Coweight& sector) {
  if (theory.rank == 1 && sector[0] == 1) return "x";
  if (theory.rank == 1 && sector[0] == -1) return "y";
  std::string s = "X[";
  for (std::size_t j = 0; j < sector.size(); ++j) s += (j ? "," : "") + std::to_string(sector[j]);
  return s + "]";
}

TorusTheory strip_masses(const TorusTheory& theory) {
  TorusTheory t;
  t.rank = theory.rank;
  t.matter = theory.matter;
  return t;
}

/// Evaluates generator monomials in the Coulomb branch ring, with memoization.
class MonomialEvaluator {
 public:
  MonomialEvaluator(std::shared_ptr<const TorusTheory> theory, const std::vector<Generator>& generators)
      : theory_(std::move(theory)), generators_(generators) {}

  const AlgebraElement& operator()(const Polynomial::Exponents& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    std::size_t k = 0;
    while (k < e.size() && e[k] == 0) ++k;
    AlgebraElement value(theory_);
    if (k == e.size()) {
      value = monopole_generator(theory_, Coweight(theory_->rank, 0));
    } else {
      Polynomial::Exponents rest = e;
      --rest[k];
      const AlgebraElement lower = (*this)(rest);
      value = multiply(generator(k), lower, ProductMode::classical);
    }
    return cache_.emplace(e, std::move(value)).first->second;
  }

  AlgebraElement generator(std::size_t k) const {
    const Generator& g = generators_[k];
    const Polynomial s = Polynomial::constant(theory_->coefficient_variables(), g.scale);
    if (g.kind == Generator::Kind::w) return w_element(theory_, g.w_index).scaled(s);
    return monopole_generator(theory_, g.sector).scaled(s);
  }

  AlgebraElement evaluate(const Polynomial& relation) {
    AlgebraElement out(theory_);
    for (const auto& [e, c] : relation.terms())
      out += (*this)(e).scaled(Polynomial::constant(theory_->coefficient_variables(), c));
    return out;
  }

 private:
  std::shared_ptr<const TorusTheory> theory_;
  const std::vector<Generator>& generators_;
  std::map<Polynomial::Exponents, AlgebraElement> cache_;
};

/// Generator monomials of one degree, sorted so that column 0 is the largest.
struct MonomialSlice {
  std::vector<Polynomial::Exponents> monomials;
  std::map<Polynomial::Exponents, std::size_t> index;
};

void enumerate_monomials(const std::vector<Generator>& gens, std::int64_t remaining, std::size_t k,
                         Polynomial::Exponents& cur, std::vector<Polynomial::Exponents>& out) {
  if (k == gens.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const std::int64_t d = gens[k].degree.half_units();
  for (std::int64_t e = 0; e * d <= remaining; ++e) {
    cur[k] = static_cast<int>(e);
    enumerate_monomials(gens, remaining - e * d, k + 1, cur, out);
  }
  cur[k] = 0;
}

MonomialSlice monomials_of_degree(const std::vector<Generator>& gens, HalfInteger degree) {
  MonomialSlice slice;
  Polynomial::Exponents cur(gens.size(), 0);
  enumerate_monomials(gens, degree.half_units(), 0, cur, slice.monomials);
  std::sort(slice.monomials.begin(), slice.monomials.end(),
            [&](const auto& a, const auto& b) { return presentation_order_greater(a, b, gens); });
  for (std::size_t i = 0; i < slice.monomials.size(); ++i) slice.index.emplace(slice.monomials[i], i);
  return slice;
}

bool is_homogeneous(const Polynomial& r, const std::vector<Generator>& gens) {
  std::optional<std::int64_t> degree;
  for (const auto& [e, c] : r.terms()) {
    std::int64_t d = 0;
    for (std::size_t k = 0; k < gens.size(); ++k) d += e[k] * gens[k].degree.half_units();
    if (degree && *degree != d) return false;
    degree = d;
  }
  return true;
}

HalfInteger relation_degree(const Polynomial& r, const std::vector<Generator>& gens) {
  const auto& e = r.terms().begin()->first;
  std::int64_t d = 0;
  for (std::size_t k = 0; k < gens.size(); ++k) d += e[k] * gens[k].degree.half_units();
  return HalfInteger::from_half_units(d);
}

/// Coordinates of m * r (r a relation) in the monomial basis of its degree.
SparseVector ideal_vector(const Polynomial::Exponents& m, const Polynomial& r, const MonomialSlice& slice) {
  std::map<std::size_t, Rational> v;
  for (const auto& [e, c] : r.terms()) {
    Polynomial::Exponents f = e;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += m[k];
    v[slice.index.at(f)] += c;
  }
  return to_primitive(v);
}

/// Span of { m * r : deg m + deg r = degree } inside the monomials of `slice`.
FractionFreeEchelon ideal_span(const std::vector<Polynomial>& relations, const std::vector<Generator>& gens,
                               HalfInteger degree, const MonomialSlice& slice) {
  FractionFreeEchelon span;
  for (const Polynomial& r : relations) {
    const HalfInteger dr = relation_degree(r, gens);
    if (dr > degree) continue;
    const MonomialSlice multipliers = monomials_of_degree(gens, degree - dr);
    for (const auto& m : multipliers.monomials) span.insert(ideal_vector(m, r, slice));
  }
  return span;
}

/// The pivot row at `lead` with every other pivot column cleared.
SparseVector tail_reduced(const FractionFreeEchelon& span, std::size_t lead) {
  std::map<std::size_t, Rational> v;
  for (const auto& [col, x] : span.pivots().at(lead)) v[col] = Rational(x);
  for (const auto& [pcol, pivot] : span.pivots()) {
    if (pcol == lead) continue;
    auto it = v.find(pcol);
    if (it == v.end() || it->second == 0) continue;
    const Rational f = it->second / Rational(pivot.front().second);
    for (const auto& [col, x] : pivot) v[col] -= f * Rational(x);
  }
  std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
  return to_primitive(v);
}

Polynomial to_relation(const SparseVector& v, const MonomialSlice& slice, std::size_t gens) {
  Polynomial p(gens);
  const Integer& lead = v.front().second;
  for (const auto& [col, x] : v) {
    Rational c(x, lead);
    c.canonicalize();
    p.add_term(slice.monomials[col], c);
  }
  return p;
}

Polynomial::Exponents leading_monomial(const Polynomial& p, const std::vector<Generator>& gens) {
  const Polynomial::Exponents* best = nullptr;
  for (const auto& [e, c] : p.terms())
    if (!best || presentation_order_greater(e, *best, gens)) best = &e;
  return *best;
}

Polynomial make_monic(const Polynomial& p, const std::vector<Generator>& gens) {
  if (p.is_zero()) return p;
  const Rational lead = p.terms().at(leading_monomial(p, gens));
  return p * (1 / lead);
}

// Rescales generator k by s: the new symbol equals s * (old symbol).
void rescale_generator(Presentation& p, std::size_t k, const Rational& s) {
  p.generators[k].scale *= s;
  for (Polynomial& r : p.relations) {
    Polynomial q(r.variable_count());
    for (const auto& [e, c] : r.terms()) {
      Rational f = c;
      for (int i = 0; i < e[k]; ++i) f /= s;
      q.add_term(e, f);
    }
    r = make_monic(q, p.generators);
  }
}

/// Makes binomial relations read M1 +- M2 by rescaling a monopole generator
/// that occurs linearly in exactly one of the two monomials.
void canonicalize_units(Presentation& p) {
  std::vector<bool> rescaled(p.generators.size(), false);
  for (std::size_t ri = 0; ri < p.relations.size(); ++ri) {
    const Polynomial& r = p.relations[ri];
    if (r.size() != 2) continue;
    const auto lead = leading_monomial(r, p.generators);
    Polynomial::Exponents other;
    Rational c;
    for (const auto& [e, x] : r.terms())
      if (e != lead) {
        other = e;
        c = x;
      }
    if (abs(c) == 1) continue;
    for (std::size_t k = 0; k < p.generators.size(); ++k) {
      if (p.generators[k].kind != Generator::Kind::monopole || rescaled[k]) continue;
      if (lead[k] == 1 && other[k] == 0) {
        rescale_generator(p, k, 1 / abs(c));
      } else if (other[k] == 1 && lead[k] == 0) {
        rescale_generator(p, k, abs(c));
      } else {
        continue;
      }
      rescaled[k] = true;
      break;
    }
  }
}

}  // namespace

Presentation find_relations(const TorusTheory& input, const std::vector<Coweight>& sectors, HalfInteger bound) {
  input.validate();
  auto theory = std::make_shared<const TorusTheory>(strip_masses(input));
  check_positive(*theory);

  Presentation p;
  p.theory = *theory;
  p.degree_bound = bound;
  const auto coefficient_names = theory->coefficient_names();
  for (std::size_t j = 0; j < theory->rank; ++j)
    p.generators.push_back({coefficient_names[j], Generator::Kind::w, j, {}, HalfInteger::from_integer(1), 1});
  for (const Coweight& s : sectors) {
    const HalfInteger d = delta_dimension(*theory, s);
    if (d.half_units() <= 0)
      throw DivergenceError("generator sector " + format_vector(s) + " has non-positive degree", s);
    p.generators.push_back({monopole_name(*theory, s), Generator::Kind::monopole, 0, s, d, 1});
  }

  // Graded basis grouped by degree, with row indices per degree.
  std::map<HalfInteger, std::map<std::pair<Polynomial::Exponents, Coweight>, std::size_t>> basis_rows;
  std::map<HalfInteger, std::vector<BasisMonomial>> basis_by_degree;
  for (auto& b : graded_basis(*theory, bound)) {
    auto& rows = basis_rows[b.degree];
    rows.emplace(std::make_pair(b.w_exponents, b.sector), rows.size());
    basis_by_degree[b.degree].push_back(b);
  }

  MonomialEvaluator evaluate(theory, p.generators);
  const std::size_t gens = p.generators.size();
  for (std::int64_t h = 0; h <= bound.half_units(); ++h) {
    const HalfInteger degree = HalfInteger::from_half_units(h);
    const MonomialSlice slice = monomials_of_degree(p.generators, degree);
    const auto& rows = basis_rows[degree];
    const std::size_t nb = rows.size();

    // Augmented rows [image | e_m]; rows whose image part reduces to zero
    // carry kernel vectors.
    FractionFreeEchelon image;
    std::vector<SparseVector> kernel;
    for (std::size_t m = 0; m < slice.monomials.size(); ++m) {
      std::map<std::size_t, Rational> v;
      for (const auto& [sector, coeff] : evaluate(slice.monomials[m]).terms())
        for (const auto& [e, c] : coeff.terms()) {
          Polynomial::Exponents alpha(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(theory->rank));
          v[rows.at({alpha, sector})] += c;
        }
      v[nb + m] = 1;
      SparseVector row = image.reduce_leading(to_primitive(v));
      if (row.front().first < nb) {
        image.insert_reduced(std::move(row));
      } else {
        for (auto& [col, x] : row) col -= nb;
        kernel.push_back(std::move(row));
      }
    }
    if (image.rank() < nb) {
      p.surjective = false;
      for (const auto& b : basis_by_degree[degree])
        if (!image.has_pivot(rows.at({b.w_exponents, b.sector}))) p.missed.push_back(b);
    }

    // New relations: kernel modulo the ideal generated by earlier relations.
    FractionFreeEchelon span = ideal_span(p.relations, p.generators, degree, slice);
    std::vector<std::size_t> fresh;
    for (auto& k : kernel) {
      SparseVector r = span.reduce_leading(std::move(k));
      if (r.empty()) continue;
      fresh.push_back(r.front().first);
      span.insert_reduced(std::move(r));
    }
    for (std::size_t lead : fresh) p.relations.push_back(to_relation(tail_reduced(span, lead), slice, gens));
  }
  canonicalize_units(p);
  return p;
}

Presentation minimal_presentation(const Presentation& input) {
  Presentation p = input;
  for (;;) {
    bool changed = false;
    for (std::size_t ri = 0; ri < p.relations.size() && !changed; ++ri) {
      const Polynomial& r = p.relations[ri];
      for (std::size_t k = 0; k < p.generators.size(); ++k) {
        if (p.generators[k].kind != Generator::Kind::w) continue;
        Polynomial::Exponents unit(p.generators.size(), 0);
        unit[k] = 1;
        auto it = r.terms().find(unit);
        if (it == r.terms().end()) continue;
        const bool elsewhere = std::any_of(r.terms().begin(), r.terms().end(),
                                           [&](const auto& t) { return t.first != unit && t.first[k] != 0; });
        if (elsewhere) continue;
        // w_k = -(r - c w_k) / c
        Polynomial value = r;
        value.add_term(unit, -it->second);
        value = value * (-1 / it->second);
        std::vector<Polynomial> rest;
        for (std::size_t j = 0; j < p.relations.size(); ++j) {
          if (j == ri) continue;
          Polynomial q = p.relations[j].substitute(k, value).remove_variable(k);
          if (!q.is_zero()) rest.push_back(q);
        }
        p.generators.erase(p.generators.begin() + static_cast<std::ptrdiff_t>(k));
        for (auto& q : rest) q = make_monic(q, p.generators);
        p.relations = std::move(rest);
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  return p;
}

VerificationReport verify_presentation(const Presentation& p) {
  VerificationReport report;
  auto theory = std::make_shared<const TorusTheory>(strip_masses(p.theory));
  MonomialEvaluator evaluate(theory, p.generators);
  for (const Polynomial& r : p.relations) {
    if (r.variable_count() != p.generators.size())
      throw DimensionError("relation does not match the generator count");
    const AlgebraElement value = evaluate.evaluate(r);
    if (!value.is_zero()) {
      report.relations_vanish = false;
      report.failures.push_back("relation " + p.relation_string(r) + " evaluates to " + value.to_string());
    }
    if (!is_homogeneous(r, p.generators)) {
      report.dimensions_match = false;
      report.failures.push_back("relation " + p.relation_string(r) + " is not homogeneous");
    }
  }
  if (!report.dimensions_match) return report;

  std::map<HalfInteger, std::size_t> basis_count;
  for (const auto& b : graded_basis(*theory, p.degree_bound)) ++basis_count[b.degree];
  for (std::int64_t h = 0; h <= p.degree_bound.half_units(); ++h) {
    const HalfInteger degree = HalfInteger::from_half_units(h);
    const MonomialSlice slice = monomials_of_degree(p.generators, degree);
    const FractionFreeEchelon span = ideal_span(p.relations, p.generators, degree, slice);
    const std::size_t presented = slice.monomials.size() - span.rank();
    const std::size_t expected = basis_count[degree];
    report.dimensions.emplace_back(degree, presented, expected);
    if (presented != expected) {
      report.dimensions_match = false;
      report.failures.push_back("degree " + degree.to_string() + ": presented ring has dimension " +
                                std::to_string(presented) + ", graded basis has " + std::to_string(expected));
    }
  }
  return report;
}

}  // namespace coulomb
