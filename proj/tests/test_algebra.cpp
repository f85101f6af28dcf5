#include <doctest.h>

#include <cmath>
#include <random>

#include "embedrank/error.hpp"
#include "embedrank/field.hpp"
#include "embedrank/geometry.hpp"
#include "embedrank/matrix.hpp"
#include "oracles.hpp"

using namespace embedrank;

namespace {

// polynomial product mod (p, f) without the library's tables
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const Poly& f, int p) {
  const std::size_t t = f.size() - 1;
  std::vector<int> prod(2 * t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t deg = 2 * t - 1; deg >= t; --deg) {
    const int c = prod[deg];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= t; ++i) prod[deg - t + i] = ((prod[deg - t + i] - c * f[i]) % p + p) % p;
  }
  prod.resize(t);
  return prod;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, int p, std::mt19937_64& rng) {
  Matrix m(rows, cols, p);
  std::uniform_int_distribution<int> dist(0, p - 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, dist(rng));
  }
  return m;
}

oracle::IntMatrix to_int(const Matrix& m) {
  oracle::IntMatrix out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace

TEST_CASE("field construction") {
  const auto gf2 = Field::make(2, 1);
  CHECK(gf2.order() == 2);
  const auto gf4 = Field::make(2, 2);
  CHECK(gf4.irreducible() == Poly{1, 1, 1});
  // x^2 + x + 1 has no root in GF(2)
  for (int x = 0; x < 2; ++x) CHECK((x * x + x + 1) % 2 != 0);
  CHECK_THROWS_AS(Field::make(2, 2, Poly{1, 0, 1}), Error);
  try {
    Field::make(2, 2, Poly{1, 0, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReduciblePolynomial);
  }
  try {
    Field::make(4, 1);
    FAIL("composite modulus accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPrimeModulus);
  }
  try {
    Field::make(2, 6);
    FAIL("no default expected for q = 64");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoDefaultIrreducible);
  }
  CHECK(Field::make(2, 6, Poly{1, 1, 0, 0, 0, 0, 1}).order() == 64);
  for (auto [p, t] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {2, 5}}) {
    CHECK(Field::make(p, t).order() == static_cast<int>(std::pow(p, t)));
  }
}

TEST_CASE("GF(4) examples") {
  const auto f = Field::make(2, 2);
  const auto x = f.element({0, 1});
  CHECK(f.mul(x, x) == f.element({1, 1}));
  CHECK(f.inv(x) == f.element({1, 1}));
  CHECK(f.add(x, f.zero()) == x);
  CHECK_THROWS_AS(f.inv(f.zero()), Error);
  const auto g = Field::make(2, 3);
  CHECK_THROWS_AS(f.add(x, g.one()), Error);
}

TEST_CASE("field axioms are exhaustive on GF(4), GF(8), GF(9)") {
  for (auto [p, t] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    const auto f = Field::make(p, t);
    const int q = f.order();
    for (int a = 0; a < q; ++a) {
      const auto ea = f.from_code(a);
      CHECK(f.code_of(ea) == a);
      if (a != 0) CHECK(f.mul(ea, f.inv(ea)) == f.one());
      CHECK(f.pow(ea, q) == ea);
      for (int b = 0; b < q; ++b) {
        const auto eb = f.from_code(b);
        CHECK(f.mul(ea, eb).coeffs == poly_mulmod(ea.coeffs, eb.coeffs, f.irreducible(), p));
        CHECK(f.code_of(f.mul(ea, eb)) == f.mul(a, b));
        CHECK(f.code_of(f.add(ea, eb)) == f.add(a, b));
        for (int c = 0; c < q; ++c) {
          const auto ec = f.from_code(c);
          CHECK(f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)));
          CHECK(f.add(f.add(ea, eb), ec) == f.add(ea, f.add(eb, ec)));
          CHECK(f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec)));
        }
      }
    }
  }
}

TEST_CASE("rank examples") {
  const auto fano = pg_design(2, 2, 1);
  CHECK(rank(fano.incidence(2)) == 4);
  CHECK(rank(fano.incidence(2)) == oracle::rank(oracle::incidence(fano), 2));
  CHECK(rank(Matrix(5, 7, 2)) == 0);
  CHECK(rank(Matrix(5, 7, 3)) == 0);
  CHECK(rank(Matrix(0, 0, 2)) == 0);
  CHECK(rank(ag_design(3, 4, 2).design.incidence(2)) == 16);
}

TEST_CASE("rref") {
  Matrix id(4, 4, 3);
  for (std::size_t i = 0; i < 4; ++i) id.set(i, i, 1);
  const auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2, 3});
  const auto fano = pg_design(2, 2, 1).incidence(2);
  const auto rf = rref(fano);
  CHECK(rf.reduced.rows() == 4);
  CHECK(std::is_sorted(rf.pivots.begin(), rf.pivots.end()));
  // duplicated rows give the same RREF
  Matrix dup(0, fano.cols(), 2);
  for (std::size_t i = 0; i < fano.rows(); ++i) {
    dup.append_row(fano.bit_row(i));
    dup.append_row(fano.bit_row(i));
  }
  CHECK(rref(dup).reduced == rf.reduced);
  // row space preserved: every original row lies in the span of the reduced rows
  Matrix both = rf.reduced;
  for (std::size_t i = 0; i < fano.rows(); ++i) both.append_row(fano.bit_row(i));
  CHECK(rank(both) == rf.reduced.rows());
}

TEST_CASE("nullspace") {
  Matrix full(3, 3, 2);
  for (std::size_t i = 0; i < 3; ++i) full.set(i, i, 1);
  CHECK(nullspace(full).rows() == 0);
  const auto ns = nullspace(Matrix::from_rows({{1, 1}}, 2, 2));
  REQUIRE(ns.rows() == 1);
  CHECK(ns.row(0) == std::vector<int>{1, 1});

  const auto ag = ag_design(3, 4, 2).design;
  const auto mprime = derived(ag, 0).incidence(2);
  CHECK(mprime.rows() == 16);
  CHECK(mprime.cols() == 80);
  const auto n = nullspace(mprime);
  CHECK(n.rows() == 80 - rank(mprime));
}

TEST_CASE("rank-nullity, transpose and permutation invariance on random matrices") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto rows = 1 + rng() % 20;
      const auto cols = 1 + rng() % 24;
      auto m = random_matrix(rows, cols, p, rng);
      const auto r = rank(m);
      CHECK(r == oracle::rank(to_int(m), p));
      CHECK(r == rank(m.transposed()));
      const auto ns = nullspace(m);
      CHECK(r + ns.rows() == cols);
      for (std::size_t i = 0; i < ns.rows(); ++i) {
        for (std::size_t a = 0; a < rows; ++a) {
          int s = 0;
          for (std::size_t c = 0; c < cols; ++c) s += m.get(a, c) * ns.get(i, c);
          CHECK(s % p == 0);
        }
      }
      std::vector<std::size_t> rp(rows), cp(cols);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      CHECK(rank(m.select_rows(rp).select_columns(cp)) == r);
    }
  }
}

TEST_CASE("packed GF(2) rank agrees with the generic path") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = 1 + rng() % 64;
    const auto cols = 1 + rng() % 96;
    const auto m = random_matrix(rows, cols, 2, rng);
    CHECK(rank(m) == rank_generic(m));
  }
}
