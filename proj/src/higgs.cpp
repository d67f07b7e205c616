#include "coulomb/higgs.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "coulomb/errors.hpp"
#include "coulomb/monopole.hpp"
#include "coulomb/sparse_echelon.hpp"

namespace coulomb {

void HiggsInput::validate() const {
  for (std::size_t i = 0; i < charges.size(); ++i)
    if (charges[i].size() != gauge_rank)
      throw DimensionError("charge " + std::to_string(i) + " has length " + std::to_string(charges[i].size()) +
                           ", expected " + std::to_string(gauge_rank));
}

GradedSeries higgs_hilbert_series(const HiggsInput& input, HalfInteger order) {
  input.validate();
  const std::int64_t top = order.half_units();
  const std::size_t r = input.gauge_rank;

  // The 2d factors 1/(1 - t z^{+-c_i}), expanded one at a time.
  std::vector<Covector> factors;
  for (const auto& c : input.charges) {
    factors.push_back(c);
    Covector neg(c);
    for (auto& x : neg) x = -x;
    factors.push_back(neg);
  }
  // reach[f][j]: largest |c_j| among factors f, f+1, ...; bounds how far the
  // remaining factors can move z_j back towards zero.
  std::vector<std::vector<std::int64_t>> reach(factors.size() + 1, std::vector<std::int64_t>(r, 0));
  for (std::size_t f = factors.size(); f-- > 0;)
    for (std::size_t j = 0; j < r; ++j) reach[f][j] = std::max(reach[f + 1][j], std::abs(factors[f][j]));

  using State = std::pair<std::int64_t, std::vector<std::int64_t>>;
  std::map<State, Integer> states{{State{0, std::vector<std::int64_t>(r, 0)}, Integer(1)}};
  for (std::size_t f = 0; f < factors.size(); ++f) {
    std::map<State, Integer> next;
    for (const auto& [state, c] : states) {
      State s = state;
      while (s.first <= top) {
        bool reachable = true;
        for (std::size_t j = 0; j < r && reachable; ++j)
          reachable = std::abs(s.second[j]) <= (top - s.first) * reach[f + 1][j];
        if (reachable) next[s] += c;
        ++s.first;
        for (std::size_t j = 0; j < r; ++j) s.second[j] += factors[f][j];
      }
    }
    states = std::move(next);
  }

  std::vector<Integer> constant(static_cast<std::size_t>(top + 1));
  for (const auto& [state, c] : states)
    if (std::all_of(state.second.begin(), state.second.end(), [](auto x) { return x == 0; }))
      constant[static_cast<std::size_t>(state.first)] += c;

  GradedSeries molien(order, 0);
  for (std::int64_t h = 0; h <= top; ++h) molien.add_term(h, {}, Rational(constant[static_cast<std::size_t>(h)]));
  // Moment map: one relation of degree 1 (two half units) per gauge direction.
  GradedSeries relation = GradedSeries::one(order);
  relation.add_term(2, {}, -1);
  return molien * relation.pow(static_cast<unsigned>(r));
}

namespace {

// Monomials x^a y^b (exponents concatenated) of total degree k and weight 0.
std::vector<std::vector<int>> invariant_monomials(const HiggsInput& input, int k) {
  const std::size_t d = input.charges.size();
  std::vector<std::vector<int>> out;
  std::vector<int> e(2 * d, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == 2 * d) {
      e[i] = left;
      for (std::size_t j = 0; j < input.gauge_rank; ++j) {
        std::int64_t w = 0;
        for (std::size_t f = 0; f < d; ++f) w += (e[f] - e[d + f]) * input.charges[f][j];
        if (w != 0) return;
      }
      out.push_back(e);
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (d == 0) {
    if (k == 0) out.emplace_back();
  } else {
    rec(0, k);
  }
  return out;
}

}  // namespace

std::vector<Integer> higgs_invariant_counts(const HiggsInput& input, HalfInteger order) {
  input.validate();
  const std::size_t d = input.charges.size();
  const auto top = static_cast<int>(order.half_units());
  std::vector<std::vector<std::vector<int>>> by_degree;
  std::vector<Integer> out;
  for (int k = 0; k <= top; ++k) {
    by_degree.push_back(invariant_monomials(input, k));
    const auto& basis = by_degree.back();
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    FractionFreeEchelon ideal;
    if (k >= 2)
      for (std::size_t j = 0; j < input.gauge_rank; ++j)
        for (const auto& m : by_degree[static_cast<std::size_t>(k - 2)]) {
          // mu_j * m with mu_j = sum_f c_fj x_f y_f
          std::map<std::size_t, Rational> v;
          for (std::size_t f = 0; f < d; ++f) {
            if (input.charges[f][j] == 0) continue;
            auto e = m;
            ++e[f];
            ++e[d + f];
            v[index.at(e)] += Rational(static_cast<long>(input.charges[f][j]));
          }
          std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
          if (!v.empty()) ideal.insert(to_primitive(v));
        }
    out.emplace_back(static_cast<unsigned long>(basis.size() - ideal.rank()));
  }
  return out;
}

nlohmann::json DualityReport::to_json() const {
  nlohmann::json j;
  j["status"] = status == Status::equal ? "equal" : "mismatch";
  j["order_checked"] = order_checked.to_string();
  if (first_mismatch) j["first_mismatch"] = first_mismatch->to_string();
  j["flatness_checked"] = flatness_checked.to_string();
  j["molien_agrees_with_invariant_count"] = molien_agrees;
  j["coulomb"] = coulomb.to_json();
  j["higgs"] = higgs.to_json();
  return j;
}

DualityReport duality_check(const IntMatrix& B, HalfInteger order) {
  TorusTheory coulomb_side;
  coulomb_side.rank = B.cols();
  coulomb_side.matter = B.to_rows();
  const Cokernel cok = cokernel_charges(B);

  HiggsInput higgs_side;
  higgs_side.gauge_rank = cok.charges.rows();
  for (std::size_t i = 0; i < B.rows(); ++i) {
    Covector c(higgs_side.gauge_rank);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = cok.charges(j, i).get_si();
    higgs_side.charges.push_back(c);
  }

  DualityReport report;
  report.order_checked = order;
  report.coulomb = monopole_hilbert_series(NonabelianTheory::from_torus(coulomb_side), order);
  report.higgs = higgs_hilbert_series(higgs_side, order);
  const auto a = report.coulomb.coefficients();
  const auto b = report.higgs.coefficients();
  for (std::size_t h = 0; h < a.size(); ++h)
    if (a[h] != b[h]) {
      report.status = DualityReport::Status::mismatch;
      report.first_mismatch = HalfInteger::from_half_units(static_cast<std::int64_t>(h));
      break;
    }

  // The Molien count is only right when the moment map is flat; compare with
  // the exact invariant count in low degree.
  const std::int64_t flat_units = B.rows() <= 4 ? 6 : 2;
  report.flatness_checked = std::min(order, HalfInteger::from_half_units(flat_units));
  const auto counts = higgs_invariant_counts(higgs_side, report.flatness_checked);
  for (std::size_t h = 0; h < counts.size(); ++h)
    if (Rational(counts[h]) != b[h]) report.molien_agrees = false;
  return report;
}

}  // namespace coulomb
