#include <doctest.h>

#include "embedrank/code.hpp"
#include "embedrank/error.hpp"
#include "embedrank/geometry.hpp"
#include "oracles.hpp"

using namespace embedrank;

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Gaussian binomial [n choose d]_q
std::uint64_t gauss(std::uint64_t n, std::uint64_t d, std::uint64_t q) {
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

}  // namespace

TEST_CASE("AG and PG parameters follow the closed forms on the test grid") {
  for (std::uint64_t q : {2, 3, 4}) {
    for (std::uint64_t n = 2; n <= 4; ++n) {
      for (std::uint64_t d = 1; d < n; ++d) {
        if (ipow(q, n) > 256) continue;
        const auto ag = ag_design(n, q, d);
        const auto pa = verify_tdesign(ag.design, 2);
        REQUIRE(pa);
        CHECK(pa->v == ipow(q, n));
        CHECK(pa->k == ipow(q, d));
        CHECK(pa->lambda == gauss(n - 1, d - 1, q));
        CHECK(pa->b == ipow(q, n - d) * gauss(n, d, q));
        CHECK(ag.classical.classes.size() == gauss(n, d, q));
        CHECK_NOTHROW(check_resolution(ag.design, ag.classical));

        if (ipow(q, n + 1) > 1024) continue;
        const auto pg = pg_design(n, q, d);
        const auto pp = verify_tdesign(pg, 2);
        REQUIRE(pp);
        CHECK(pp->v == gauss(n + 1, 1, q));
        CHECK(pp->k == gauss(d + 1, 1, q));
        CHECK(pp->lambda == gauss(n - 1, d - 1, q));
        CHECK(pp->b == gauss(n + 1, d + 1, q));
      }
    }
  }
}

TEST_CASE("named instances") {
  const auto ag = ag_design(3, 4, 2);
  CHECK(ag.design.b() == 84);
  CHECK(ag.classical.classes.size() == 21);
  CHECK(ag_design(2, 2, 1).design.b() == 6);
  const auto big = ag_design(4, 4, 3).design;
  CHECK(big.v() == 256);
  CHECK(big.b() == 340);
  CHECK(big.block(0).size() == 64);

  const auto fano = pg_design(2, 2, 1);
  CHECK(fano.v() == 7);
  CHECK(fano.b() == 7);
  const auto pg = verify_tdesign(pg_design(3, 4, 2), 2);
  CHECK(pg->v == 85);
  CHECK(pg->k == 21);
  CHECK(pg->lambda == 5);
  CHECK(pg->symmetric);
  const auto pg32 = verify_tdesign(pg_design(3, 2, 2), 2);
  CHECK(pg32->v == 15);
  CHECK(pg32->k == 7);
  CHECK(pg32->lambda == 3);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(ag_design(3, 4, 0), Error);
  CHECK_THROWS_AS(ag_design(3, 4, 3), Error);
  CHECK_THROWS_AS(pg_design(2, 2, 2), Error);
  try {
    ag_design(2, 6, 1);
    FAIL("GF(6) accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoField);
  }
}

TEST_CASE("points are in lexicographic order") {
  // AG(2,3): point index = 3 * x0 + x1, so the line x0 = 0 is {0, 1, 2}
  const auto ag = ag_design(2, 3, 1).design;
  bool found = false;
  for (const auto& b : ag.blocks()) found |= b == Block{0, 1, 2};
  CHECK(found);
  // PG(2,2): normalized points 001, 010, 011, 100, ... and the line x0 = 0 is {0, 1, 2}
  const auto fano = pg_design(2, 2, 1);
  found = false;
  for (const auto& b : fano.blocks()) found |= b == Block{0, 1, 2};
  CHECK(found);
}

TEST_CASE("hyperplane designs have two block intersection sizes") {
  for (std::size_t q : {2, 3, 4}) {
    for (std::size_t n : {2, 3}) {
      const auto ag = ag_design(n, q, n - 1).design;
      for (const auto& [size, count] : intersection_profile(ag)) {
        CHECK((size == 0 || size == ipow(q, n - 2)));
      }
      CHECK(is_affine_resolvable(ag));
    }
  }
}

TEST_CASE("blocks are supported by minimum-weight codewords") {
  for (std::size_t q : {2, 4}) {
    for (std::size_t n : {2, 3}) {
      for (std::size_t d = 1; d < n; ++d) {
        for (bool projective : {false, true}) {
          const auto des = projective ? pg_design(n, q, d) : ag_design(n, q, d).design;
          if (des.v() > 64) continue;
          const auto code = LinearCode::from_cols(des.incidence(2));
          if (code.dimension() > 24) continue;
          const auto mw = min_weight_design(code);
          CHECK(mw.block(0).size() == des.block(0).size());
          std::set<Block> supports(mw.blocks().begin(), mw.blocks().end());
          for (const auto& b : des.blocks()) CHECK(supports.count(b) == 1);
        }
      }
    }
  }
}

TEST_CASE("2-ranks of the geometric designs") {
  CHECK(rank(ag_design(3, 4, 2).design.incidence(2)) == 16);
  CHECK(rank(pg_design(3, 4, 2).incidence(2)) == 17);
}
