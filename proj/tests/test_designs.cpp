#include <doctest.h>

#include <utility>
#include <vector>

#include "embedrank/code.hpp"
#include "embedrank/design_io.hpp"
#include "embedrank/error.hpp"
#include "embedrank/geometry.hpp"
#include "embedrank/resolve.hpp"
#include "oracles.hpp"

using namespace embedrank;

namespace {

IncidenceStructure k4_edges() { return IncidenceStructure(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, "K4"); }

IncidenceStructure sdp16() {
  std::vector<int> tt(16);
  for (int x = 0; x < 16; ++x) tt[x] = ((x & 1) & ((x >> 1) & 1)) ^ (((x >> 2) & 1) & ((x >> 3) & 1));
  return min_weight_design(sdp_code(tt));
}

}  // namespace

TEST_CASE("verify_tdesign") {
  const auto fano = pg_design(2, 2, 1);
  const auto p = verify_tdesign(fano, 2);
  REQUIRE(p);
  CHECK(p->v == 7);
  CHECK(p->k == 3);
  CHECK(p->lambda == 1);
  CHECK(p->r == 3);
  CHECK(p->b == 7);
  CHECK(p->symmetric);
  for (const auto& [s, c] : oracle::subset_counts(fano, 2)) CHECK(c == 1);

  const auto ag = ag_design(3, 4, 2).design;
  const auto pa = verify_tdesign(ag, 2);
  REQUIRE(pa);
  CHECK(pa->v == 64);
  CHECK(pa->k == 16);
  CHECK(pa->lambda == 5);
  CHECK(pa->b == 84);
  CHECK(pa->r == 21);
  CHECK(!pa->symmetric);
  CHECK(pa->fisher);

  CHECK_FALSE(verify_tdesign(fano, 3));
  CHECK_FALSE(verify_tdesign(IncidenceStructure(4, {{0, 1}, {2}}), 1));
}

TEST_CASE("AG_d(n,2) is a 3-design with the lambda_s formula") {
  for (auto [n, d] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {4, 3}}) {
    const auto ag = ag_design(n, 2, d).design;
    const auto p = verify_tdesign(ag, 3);
    REQUIRE(p);
    // lambda_s = lambda * C(v-s, t-s) / C(k-s, t-s)
    for (std::size_t s = 0; s <= 3; ++s) {
      const auto expected = p->lambda * oracle::binomial(p->v - s, 3 - s) / oracle::binomial(p->k - s, 3 - s);
      CHECK(p->lambda_s[s] == expected);
      const auto ps = verify_tdesign(ag, s);
      REQUIRE(ps);
      CHECK(ps->lambda == expected);
    }
    for (const auto& [s, c] : oracle::subset_counts(ag, 3)) CHECK(c == p->lambda);
  }
}

TEST_CASE("residual and derived") {
  const auto fano = pg_design(2, 2, 1);
  for (std::size_t j = 0; j < fano.b(); ++j) {
    const auto r = residual(fano, j);
    CHECK(r.v() == 4);
    CHECK(r.b() == 6);
    const auto p = verify_tdesign(r, 2);
    REQUIRE(p);
    CHECK(p->k == 2);
    CHECK(p->lambda == 1);
  }
  const auto ag = ag_design(3, 4, 2).design;
  const auto r = residual(ag, 0);
  CHECK(r.b() == 83);
  std::size_t big = 0, small = 0;
  for (const auto& b : r.blocks()) {
    big += b.size() == 16;
    small += b.size() == 12;
  }
  CHECK(big == 3);
  CHECK(small == 80);

  const auto d = derived(ag, 0);
  CHECK(d.v() == 16);
  CHECK(d.b() == 80);
  const auto ms = block_multiset(d);
  CHECK(ms.distinct.size() == 20);
  for (auto m : ms.multiplicity) CHECK(m == 4);
  const auto s = IncidenceStructure(16, ms.distinct);
  const auto ps = verify_tdesign(s, 2);
  REQUIRE(ps);
  CHECK(ps->k == 4);
  CHECK(ps->lambda == 1);
  CHECK(derived(ag, 0, true).b() == 83);

  CHECK(residual(IncidenceStructure(3, {{0, 1}}), 0).b() == 0);
  CHECK_THROWS_AS(residual(fano, 7), Error);
  CHECK_THROWS_AS(derived(fano, 9), Error);

  // derived design of the symmetric 2-(16,6,2): 2-(6,2,1)
  const auto sdp = sdp16();
  const auto pd = verify_tdesign(derived(sdp, 0), 2);
  REQUIRE(pd);
  CHECK(pd->v == 6);
  CHECK(pd->k == 2);
  CHECK(pd->lambda == 1);
}

TEST_CASE("residual and derived partition every block") {
  for (const auto& d : {ag_design(3, 2, 2).design, pg_design(3, 2, 2), ag_design(2, 3, 1).design}) {
    for (std::size_t j = 0; j < d.b(); ++j) {
      const auto r = residual_map(d, j, true);
      const auto dv = derived_map(d, j, true);
      REQUIRE(r.design.b() == d.b() - 1);
      REQUIRE(dv.design.b() == d.b() - 1);
      for (std::size_t i = 0; i < r.design.b(); ++i) {
        CHECK(r.block_origin[i] == dv.block_origin[i]);
        CHECK(r.design.block(i).size() + dv.design.block(i).size() == d.block(r.block_origin[i]).size());
      }
    }
  }
}

TEST_CASE("intersection profile") {
  const auto ag = ag_design(3, 4, 2).design;
  const auto prof = intersection_profile(ag);
  for (const auto& [size, count] : prof) CHECK((size == 0 || size == 4));
  CHECK(prof.at(0) + prof.at(4) == 84 * 83 / 2);
  const auto fano = intersection_profile(pg_design(2, 2, 1));
  CHECK(fano.size() == 1);
  CHECK(fano.at(1) == 21);
  CHECK(intersection_profile(IncidenceStructure(3, {{0}})).empty());
}

TEST_CASE("affine resolvability") {
  const auto ag = ag_design(3, 4, 2);
  const auto a = is_affine_resolvable(ag.design);
  REQUIRE(a);
  CHECK(a->q == 4);
  CHECK(a->mu == 4);
  CHECK(a->resolution.classes.size() == 21);
  CHECK_NOTHROW(check_resolution(ag.design, a->resolution));
  CHECK_FALSE(is_affine_resolvable(pg_design(2, 2, 1)));
  for (std::size_t q : {2, 3, 4}) {
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto g = ag_design(n, q, n - 1);
      const auto ar = is_affine_resolvable(g.design);
      REQUIRE(ar);
      const auto p = verify_tdesign(g.design, 2);
      CHECK(p->b == p->v + p->r - 1);
      CHECK(ar->q * p->k == p->v);
      CHECK(ar->mu * p->v == p->k * p->k);
    }
  }
}

TEST_CASE("parallel classes and resolutions") {
  const auto k4 = k4_edges();
  const auto pc = parallel_classes(k4);
  CHECK(pc.size() == 3);
  const auto rs = resolutions(k4);
  CHECK(rs.size() == 1);
  CHECK(rs[0].classes.size() == 3);
  CHECK_THROWS_AS(parallel_classes(IncidenceStructure(4, {{0, 1}, {2}})), Error);

  const auto gb = good_block(ag_design(3, 4, 2).design, 0);
  REQUIRE(gb);
  CHECK(parallel_classes(gb->substructure).size() == 40);
  const auto all = resolutions(gb->substructure);
  CHECK(all.size() == 32);
  for (const auto& r : all) CHECK_NOTHROW(check_resolution(gb->substructure, r));
  try {
    resolutions(gb->substructure, 10);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("parallel enumeration matches the serial order for every worker count") {
  const auto gb = good_block(ag_design(3, 4, 2).design, 0);
  const auto serial_classes = parallel_classes_serial(gb->substructure);
  const auto serial = resolutions_serial(gb->substructure);
  for (int w : {1, 2, 3, 8}) {
    CHECK(parallel_classes(gb->substructure, w) == serial_classes);
    CHECK(resolutions(gb->substructure, std::nullopt, w) == serial);
  }
}

TEST_CASE("good blocks") {
  // n >= 3 so that the blocks of the substructure have at least two points
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {3, 3}, {3, 4}, {4, 2}}) {
    {
      const auto ag = ag_design(n, q, n - 1).design;
      for (std::size_t j = 0; j < ag.b(); j += 7) {
        const auto gb = good_block(ag, j);
        REQUIRE(gb);
        const auto p = verify_tdesign(gb->simple_design, 2);
        REQUIRE(p);
        CHECK(p->v == gb->simple_design.v());
        CHECK(is_simple(gb->simple_design));
        CHECK_NOTHROW(check_resolution(gb->substructure, gb->resolution));
      }
    }
  }
  const auto gb = good_block(ag_design(3, 4, 2).design, 0);
  CHECK(gb->simple_design.v() == 16);
  CHECK(gb->simple_design.b() == 20);
  CHECK_THROWS_AS(good_block(pg_design(2, 2, 1), 0), Error);
  CHECK_THROWS_AS(good_block(ag_design(2, 2, 1).design, 99), Error);
}

TEST_CASE("normal blocks") {
  const auto pg = pg_design(3, 4, 2);
  const auto nb = normal_block(pg, 0, 4);
  REQUIRE(nb);
  const auto p = verify_tdesign(nb->base, 2);
  REQUIRE(p);
  CHECK(p->v == 21);
  CHECK(p->k == 5);
  CHECK(p->lambda == 1);
  CHECK_FALSE(nb->degenerate);

  const auto fano = normal_block(pg_design(2, 2, 1), 0, 2);
  REQUIRE(fano);
  CHECK(fano->degenerate);
  CHECK(fano->base.v() == 3);

  // a 2-(15,7,3) design not isomorphic to PG_2(3,2); only one of its blocks is normal
  const IncidenceStructure other(
      15, {{0, 1, 2, 3, 5, 8, 13},   {0, 1, 2, 4, 7, 9, 10},   {0, 1, 5, 6, 7, 11, 12},  {0, 2, 6, 10, 11, 13, 14},
           {0, 3, 4, 5, 6, 9, 14},   {0, 3, 7, 8, 10, 12, 14}, {0, 4, 8, 9, 11, 12, 13}, {1, 2, 3, 4, 11, 12, 14},
           {1, 3, 6, 8, 9, 10, 11},  {1, 4, 6, 7, 8, 13, 14},  {1, 5, 9, 10, 12, 13, 14}, {2, 3, 6, 7, 9, 12, 13},
           {2, 4, 5, 6, 8, 10, 12},  {2, 5, 7, 8, 9, 11, 14},  {3, 4, 5, 7, 10, 11, 13}});
  REQUIRE(verify_tdesign(other, 2));
  CHECK(verify_tdesign(other, 2)->lambda == 3);
  std::size_t normal = 0;
  for (std::size_t j = 0; j < other.b(); ++j) normal += normal_block(other, j, 2).has_value();
  CHECK(normal == 1);
  const auto pg32 = pg_design(3, 2, 2);
  for (std::size_t j = 0; j < pg32.b(); ++j) CHECK(normal_block(pg32, j, 2).has_value());
  CHECK_THROWS_AS(normal_block(ag_design(2, 2, 1).design, 0, 2), Error);
}

TEST_CASE("simplicity") {
  const auto ag = ag_design(3, 4, 2).design;
  CHECK(is_simple(ag));
  CHECK_FALSE(is_simple(derived(ag, 0)));
  CHECK(is_simple(ag_design(2, 4, 1).design));
}

TEST_CASE("design file formats round-trip") {
  const auto d = ag_design(2, 3, 1).design;
  const auto text = to_des(d);
  CHECK(text.substr(0, 5) == "9 12\n");
  CHECK(from_des(text) == d);
  CHECK(to_des(from_des(text)) == text);
  const auto js = to_json(d);
  CHECK(from_json(js) == d);
  CHECK(to_json(from_json(js)) == js);
  CHECK_THROWS_AS(from_des("3 1\n0 5\n"), Error);
  CHECK_THROWS_AS(from_des("garbage"), Error);
}
