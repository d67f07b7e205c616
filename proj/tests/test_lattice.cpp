#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coulomb/errors.hpp"
#include "coulomb/lattice.hpp"
#include "oracles.hpp"

using namespace coulomb;

namespace {

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<std::vector<mpz_class>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  mpz_class det = oracle::cofactor_det(rows);
  return det == 1 || det == -1;
}

bool is_smith_diagonal(const IntMatrix& d) {
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (r != c && d(r, c) != 0) return false;
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d(i, i) < 0) return false;
    if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
    if (d(i, i) != 0 && !mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pairing") {
  CHECK(pairing(Covector{1}, Coweight{1}) == 1);
  CHECK(pairing(Covector{1, 1}, Coweight{2, -1}) == 1);
  CHECK(pairing(Covector{0, 0, 0}, Coweight{5, -7, 3}) == 0);
  CHECK_THROWS_AS(pairing(Covector{1, 2}, Coweight{1}), DimensionError);
}

TEST_CASE("smith normal form on small examples") {
  SUBCASE("1x1") {
    auto snf = smith_normal_form(IntMatrix::from_rows({{1}}));
    CHECK(snf.diagonal == IntMatrix::from_rows({{1}}));
  }
  SUBCASE("diag(2,3) -> diag(1,6)") {
    const IntMatrix m = IntMatrix::from_rows({{2, 0}, {0, 3}});
    auto snf = smith_normal_form(m);
    CHECK(snf.diagonal == IntMatrix::from_rows({{1, 0}, {0, 6}}));
    CHECK(snf.left * m * snf.right == snf.diagonal);
  }
  SUBCASE("column of ones") {
    const IntMatrix m = IntMatrix::from_rows({{1}, {1}});
    auto snf = smith_normal_form(m);
    CHECK(snf.diagonal == IntMatrix::from_rows({{1}, {0}}));
    CHECK(snf.left * m * snf.right == snf.diagonal);
  }
  SUBCASE("zero and empty matrices") {
    auto z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.diagonal.is_zero());
    CHECK(z.rank() == 0);
    auto e = smith_normal_form(IntMatrix(0, 2));
    CHECK(e.right == IntMatrix::identity(2));
  }
}

TEST_CASE("smith normal form reconstructs random matrices exactly") {
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
    const IntMatrix m = IntMatrix::from_rows(rows);
    const SmithForm snf = smith_normal_form(m);
    REQUIRE(snf.left * m * snf.right == snf.diagonal);
    REQUIRE(is_unimodular(snf.left));
    REQUIRE(is_unimodular(snf.right));
    REQUIRE(is_smith_diagonal(snf.diagonal));
    if (std::max(m.rows(), m.cols()) <= 5) {
      // Independent check through determinantal divisors.
      const auto inv = oracle::smith_invariants_by_minors(rows);
      for (std::size_t i = 0; i < inv.size(); ++i) REQUIRE(snf.diagonal(i, i) == inv[i]);
    }
  }
}

TEST_CASE("cokernel charges") {
  SUBCASE("diagonal U(1) in (C*)^2") {
    auto ck = cokernel_charges(IntMatrix::from_rows({{1}, {1}}));
    CHECK(ck.charges == IntMatrix::from_rows({{1, -1}}));
    CHECK(ck.saturated());
  }
  SUBCASE("identity gives an empty quotient") {
    auto ck = cokernel_charges(IntMatrix::identity(3));
    CHECK(ck.charges.rows() == 0);
    CHECK(ck.charges.cols() == 3);
    CHECK(ck.saturated());
  }
  SUBCASE("index-2 embedding is flagged") {
    auto ck = cokernel_charges(IntMatrix::from_rows({{2}}));
    CHECK(ck.charges.rows() == 0);
    CHECK(ck.torsion_index == 2);
    CHECK_FALSE(ck.saturated());
  }
  SUBCASE("rank-deficient inclusion") {
    CHECK_THROWS_AS(cokernel_charges(IntMatrix::from_rows({{1, 2}, {2, 4}})), EmbeddingError);
    CHECK_THROWS_AS(cokernel_charges(IntMatrix::from_rows({{0}})), EmbeddingError);
  }
}

TEST_CASE("cokernel annihilates random full-rank inclusions") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5);
  int tested = 0;
  while (tested < 200) {
    const std::size_t d = dim(rng);
    std::uniform_int_distribution<int> kdist(1, static_cast<int>(d));
    const std::size_t k = kdist(rng);
    const IntMatrix b = IntMatrix::from_rows(oracle::random_matrix(rng, d, k, -3, 3));
    if (smith_normal_form(b).rank() < k) {
      CHECK_THROWS_AS(cokernel_charges(b), EmbeddingError);
      continue;
    }
    ++tested;
    const Cokernel ck = cokernel_charges(b);
    REQUIRE(ck.charges.rows() == d - k);
    REQUIRE((ck.charges * b).is_zero());
    // Saturated: the charge rows extend to a basis, i.e. all Smith invariants are 1.
    if (ck.charges.rows()) {
      const SmithForm s = smith_normal_form(ck.charges);
      for (std::size_t i = 0; i < ck.charges.rows(); ++i) REQUIRE(s.diagonal(i, i) == 1);
    }
    // Torsion index equals the product of invariants of B (minor oracle).
    mpz_class index = 1;
    for (const auto& x : oracle::smith_invariants_by_minors(b.to_rows())) index *= x;
    REQUIRE(ck.torsion_index == index);
  }
}

TEST_CASE("dual sequence and double duality") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 4, k = 1 + trial % (d - 1);
    const IntMatrix b = IntMatrix::from_rows(oracle::random_matrix(rng, d, k, -3, 3));
    if (smith_normal_form(b).rank() < k) continue;
    const DualSequence seq = make_dual_sequence(b);
    REQUIRE(seq.dual_inclusion == seq.quotient.transpose());
    REQUIRE(smith_normal_form(seq.inclusion).rank() + seq.quotient.rows() == d);
    // Left kernel of C^T is the saturation of the row space of B^T.
    const Cokernel back = cokernel_charges(seq.dual_inclusion);
    REQUIRE(back.charges.rows() == k);
    REQUIRE((back.charges * seq.dual_inclusion).is_zero());
    // B^T rows lie in the lattice spanned by back.charges: stacking adds no rank
    // and the lattice index matches the torsion of B.
    IntMatrix stacked(2 * k, d);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        stacked(r, c) = back.charges(r, c);
        stacked(k + r, c) = b(c, r);
      }
    REQUIRE(hermite_rows(stacked) == hermite_rows(back.charges));
  }
}

TEST_CASE("restrict weights copies rows") {
  CHECK(restrict_weights(IntMatrix::from_rows({{1}, {1}})) == std::vector<Covector>{{1}, {1}});
  CHECK(restrict_weights(IntMatrix::identity(2)) == std::vector<Covector>{{1, 0}, {0, 1}});
  CHECK(restrict_weights(IntMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}})) ==
        std::vector<Covector>{{1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("hermite and integer kernel") {
  CHECK(hermite_rows(IntMatrix::from_rows({{2, 4}, {1, 3}})) == IntMatrix::from_rows({{1, 1}, {0, 2}}));
  const IntMatrix k = integer_kernel(IntMatrix::from_rows({{1, 1, 1}}));
  CHECK(k.rows() == 2);
  CHECK((IntMatrix::from_rows({{1, 1, 1}}) * k.transpose()).is_zero());
}
