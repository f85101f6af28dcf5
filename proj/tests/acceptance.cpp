// Acceptance checks: one PASS/FAIL line per criterion. Every expected value
// is an exact integer; time budgets are wall-clock limits.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "embedrank/code.hpp"
#include "embedrank/embedding.hpp"
#include "embedrank/geometry.hpp"
#include "embedrank/iso.hpp"
#include "embedrank/pipeline.hpp"
#include "embedrank/resolve.hpp"

using namespace embedrank;

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;

  template <class A, class B>
  void eq(const char* what, const A& got, const B& want) {
    const bool pass = got == want;
    ok &= pass;
    detail << ' ' << what << '=' << got;
    if (!pass) detail << "(want " << want << ')';
  }
  template <class A>
  void note(const char* what, const A& v) {
    detail << ' ' << what << '=' << v;
  }
  void that(const char* what, bool pass) {
    ok &= pass;
    if (!pass) detail << ' ' << what << "=false";
  }
};

std::string sizes(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

const AffineFamily64& family() {
  static const AffineFamily64 fam = discover_family();
  return fam;
}

IncidenceStructure sdp_design(std::size_t m) {
  std::vector<int> tt(std::size_t{1} << (2 * m));
  for (std::size_t x = 0; x < tt.size(); ++x) {
    int f = 0;
    for (std::size_t i = 0; i < m; ++i) f ^= static_cast<int>(((x >> (2 * i)) & 1U) & ((x >> (2 * i + 1)) & 1U));
    tt[x] = f;
  }
  return min_weight_design(sdp_code(tt));
}

void c1(Check& c) {
  const auto ag = ag_design(3, 4, 2).design;
  c.eq("rank2(AG2(3,4))", rank(ag.incidence(2)), 16U);
  c.eq("rank2(PG2(3,4))", rank(pg_design(3, 4, 2).incidence(2)), 17U);
  c.eq("rank2(residual)", rank(residual(ag, 0).incidence(2)), 15U);
  bool eq3 = true;
  for (std::size_t j = 0; j < ag.b(); ++j) {
    const auto r = embeddability(ag, j, 2);
    eq3 &= r.rank_full == r.rank_residual + 1 && r.embeddable;
  }
  c.that("rank_full=rank_residual+1 for all blocks", eq3);
}

void table(Check& c, const IncidenceStructure& d, std::size_t block, const std::map<std::size_t, std::uint64_t>& want,
           bool check_gap) {
  const auto gb = good_block(d, block);
  c.that("good block", gb.has_value());
  if (!gb) return;
  const auto code = LinearCode::from_rows(gb->substructure.incidence(2));
  c.eq("n", code.length(), 80U);
  c.eq("k", code.dimension(), 15U);
  const auto wd = weight_distribution(code);
  std::size_t matched = 0;
  for (const auto& [w, n] : want) matched += wd.at(w) == n;
  c.eq("listed entries matched", matched, want.size());
  if (check_gap) c.eq("A42+A44+A46", wd.at(42) + wd.at(44) + wd.at(46), 12160U);
  c.eq("sum", wd.total(), 32768U);
}

void c2(Check& c) {
  table(c, ag_design(3, 4, 2).design, 0,
        {{20, 48}, {30, 768}, {32, 610}, {34, 1280}, {36, 6240}, {38, 7680}, {40, 2880}, {48, 600}, {50, 256},
         {52, 240}, {64, 5}},
        true);
}

void c3(Check& c) {
  const auto& e1 = family().e1;
  table(c, e1, *block_in_orbit(e1, 3),
        {{20, 48}, {30, 1024}, {32, 610}, {36, 6240}, {38, 10240}, {40, 2880}, {44, 5760}, {46, 5120}, {48, 600},
         {52, 240}, {64, 5}},
        false);
}

void c4(Check& c) {
  const auto gb = good_block(ag_design(3, 4, 2).design, 0);
  const auto classes = parallel_classes(gb->substructure);
  const auto res = resolutions_from_classes(gb->substructure, classes, std::nullopt, 0);
  c.eq("classes", classes.size(), 40U);
  c.eq("resolutions", res.size(), 32U);
  const auto g = automorphism_group(gb->substructure);
  c.eq("|Aut(D'')|", g.order, 552960U);
  c.eq("resolution orbits", sizes(orbit_sizes(resolution_orbits(g, res))), std::string("{2,10,20}"));
}

void c5(Check& c) {
  const auto gb = good_block(ag_design(3, 4, 2).design, 0);
  const auto res = resolutions(gb->substructure);
  const auto orbits = resolution_orbits(automorphism_group(gb->substructure), res);
  const auto code = LinearCode::from_rows(gb->substructure.incidence(2));
  std::map<std::size_t, std::uint64_t> by;
  for (const auto& o : orbits) by[o.size()] = parallel_union_codewords(code, res[o.front()], 32).count;
  c.eq("orbit2", by[2], 130U);
  c.eq("orbit10", by[10], 34U);
  c.eq("orbit20", by[20], 10U);
  const auto& fam = family();
  c.eq("AG", thm_taf_necessary(fam.ag, 2).found, 210U);
  c.eq("E1", thm_taf_necessary(fam.e1, 2).found, 130U);
  c.eq("E2", thm_taf_necessary(fam.e2, 2).found, 130U);
}

void c6(Check& c) {
  const auto& fam = family();
  const auto& r = fam.first.result;
  c.eq("candidates", r.candidates_examined, 3876U);
  c.eq("viable", r.viable_codes, 16U);
  bool all_affine = !r.designs.empty();
  for (const auto& f : r.designs) {
    const auto p = verify_tdesign(f.design, 2);
    all_affine &= p && p->v == 64 && p->k == 16 && p->lambda == 5 && is_affine_resolvable(f.design).has_value();
  }
  c.that("every design affine resolvable 2-(64,16,5)", all_affine);
  const auto ag_cert = canonical_cert(fam.ag);
  std::size_t ag = 0, other = 0, other_classes = 0;
  for (const auto& cls : r.iso_classes) {
    if (cls.cert == ag_cert) {
      ag += cls.multiplicity;
    } else {
      other += cls.multiplicity;
      ++other_classes;
    }
  }
  c.eq("~AG", ag, 4U);
  c.eq("~E1", other, 12U);
  c.eq("non-AG classes", other_classes, 1U);
  const auto g = automorphism_group(fam.e1);
  c.eq("|Aut(E1)|", g.order, 92160U);
  c.eq("E1 block orbits", sizes(orbit_sizes(block_orbits(g))), std::string("{1,3,80}"));
}

void c7(Check& c) {
  const auto& fam = family();
  const auto g = automorphism_group(fam.e2);
  c.eq("|Aut(E2)|", g.order, 368640U);
  c.eq("E2 block orbits", sizes(orbit_sizes(block_orbits(g))), std::string("{4,80}"));
  c.eq("rank2(E2)", rank(fam.e2.incidence(2)), 16U);
  c.that("E2 not isomorphic to AG or E1", !are_isomorphic(fam.e2, fam.ag) && !are_isomorphic(fam.e2, fam.e1));
  const auto third = embedding_search(fam.e2, *block_in_orbit(fam.e2, 4));
  std::set<std::string> found;
  for (const auto& cls : third.iso_classes) found.insert(cls.cert.hex());
  const std::set<std::string> want{canonical_cert(fam.e1).hex(), canonical_cert(fam.e2).hex()};
  c.that("third stage finds exactly {E2, E1}", found == want);
  c.eq("third stage classes", found.size(), 2U);
}

void c8(Check& c) {
  const auto& fam = family();
  const auto s1 = sym_embedding_search(fam.e1, 2);
  const auto s2 = sym_embedding_search(fam.e2, 2);
  c.eq("E1 weight-21", s1.weight_words, 69U);
  c.eq("E2 weight-21", s2.weight_words, 69U);
  c.eq("E1 designs", s1.designs.size(), 0U);
  c.eq("E2 designs", s2.designs.size(), 0U);
  const auto sa = sym_embedding_search(fam.ag, 2);
  c.eq("AG designs", sa.designs.size(), 1U);
  c.that("AG embedding isomorphic to PG2(3,4)", sa.designs.size() == 1 && are_isomorphic(sa.designs[0], pg_design(3, 4, 2)));
}

void c9(Check& c) {
  const auto g = automorphism_group(ag_design(3, 4, 2).design);
  c.eq("|Aut(AG2(3,4))|", g.order, 23224320U);
  c.eq("block orbits", block_orbits(g).size(), 1U);
}

void c10(Check& c) {
  // minimum-weight certification against direct ranks
  std::vector<std::pair<IncidenceStructure, int>> designs;
  for (std::size_t q : {2, 3, 4}) {
    const int p = q == 3 ? 3 : 2;
    for (std::size_t n = 2; n <= 3; ++n) {
      for (std::size_t d = 1; d < n; ++d) {
        designs.emplace_back(ag_design(n, q, d).design, p);
        if (q < 4 || n < 3) designs.emplace_back(pg_design(n, q, d), p);
      }
    }
  }
  designs.emplace_back(sdp_design(2), 2);
  designs.emplace_back(min_weight_design(rm_code(1, 4)), 2);
  designs.emplace_back(min_weight_design(rm_code(1, 3)), 2);
  // minimum weights need full enumeration, so codes past 2^24 words are skipped
  std::size_t certified = 0, contradictions = 0, skipped = 0;
  for (const auto& [d, p] : designs) {
    const auto code = LinearCode::from_cols(d.incidence(p));
    if (!code.size() || *code.size() > (1U << 24)) {
      ++skipped;
      continue;
    }
    for (const auto& e : thm1_certify(d, p)) {
      certified += e.certified;
      contradictions += e.certified && !e.embeddable;
    }
  }
  c.note("designs", designs.size() - skipped);
  c.note("skipped", skipped);
  c.note("certified blocks", certified);
  c.that("some block certified", certified > 0);
  c.eq("contradictions", contradictions, 0U);

  // Hill-Newton at minimum weight
  std::size_t tested = 0, bad_drop = 0;
  for (const auto& [d, p] : designs) {
    const auto code = LinearCode::from_cols(d.incidence(p));
    if (!code.size() || *code.size() > (1U << 22)) continue;
    const auto words = codewords_of_weight(code, min_weight(code));
    for (std::size_t i = 0; i < std::min<std::size_t>(words.rows(), 3); ++i) {
      const auto hn = hill_newton(code, words.row(i));
      ++tested;
      bad_drop += !(hn.guaranteed && hn.drop == 1);
    }
  }
  c.note("min-weight words tested", tested);
  c.that("some word tested", tested > 0);
  c.eq("drop!=1", bad_drop, 0U);

  // SDP ranks at m = 2
  const auto sdp = sdp_design(2);
  c.eq("rank2(SDP)", rank(sdp.incidence(2)), 6U);
  c.eq("rank2(SDP residual)", rank(residual(sdp, 0).incidence(2)), 5U);
  c.eq("rank2(SDP derived)", rank(derived(sdp, 0).incidence(2)), 5U);

  // Rudolph bound over the family grid; n = 2 gives lambda = 0, outside the
  // bound's domain. q = 3 also reaches e = 2, so only the two directions the
  // family needs are asserted and the q = 3 values are reported.
  std::size_t big_q_below = 0, q2_reaching = 0;
  std::string q3;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    for (std::uint64_t n = 3; n <= 5; ++n) {
      std::uint64_t qn1 = 1, qn2 = 1;
      for (std::uint64_t i = 0; i + 1 < n; ++i) qn1 *= q;
      for (std::uint64_t i = 0; i + 2 < n; ++i) qn2 *= q;
      const auto e = rudolph_bound((qn1 - 1) / (q - 1), (qn2 - 1) / (q - 1));
      big_q_below += q >= 4 && e < 2;
      q2_reaching += q == 2 && e >= 2;
      if (q == 3) q3 += (q3.empty() ? "" : ",") + std::to_string(e);
    }
  }
  c.eq("q>=4 with e<2", big_q_below, 0U);
  c.eq("q=2 with e>=2", q2_reaching, 0U);
  c.note("q=3 e(n=3..5)", "{" + q3 + "}");
}

void c11(Check& c) {
  const auto ag = ag_design(4, 4, 3).design;
  c.eq("rank2(AG3(4,4))", rank(ag.incidence(2)), 25U);
  const auto gb = good_block(ag, 0);
  const auto code = LinearCode::from_rows(gb->substructure.incidence(2));
  c.eq("n", code.length(), 336U);
  c.eq("k", code.dimension(), 24U);
  c.eq("weight-128", codewords_of_weight(code, 128).rows(), 10290U);
  c.eq("parallel unions", parallel_union_codewords(code, gb->resolution, 128).count, 2226U);
  c.eq("classes", parallel_classes(gb->substructure).size(), 168U);
  c.eq("thm5 required", thm5_necessary(ag, 0).required, 2016U);
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "ranks and the embeddability relation", 1, c1},
      {2, "Table 1 weight distribution", 5, c2},
      {3, "Table 2 weight distribution", 5, c3},
      {4, "parallel classes, resolutions, Aut(D'')", 120, c4},
      {5, "parallel-union codeword counts", 60, c5},
      {6, "embedding search from AG2(3,4)", 1800, c6},
      {7, "second and third stage searches", 1800, c7},
      {8, "symmetric embeddings", 300, c8},
      {9, "collineation group order", 300, c9},
      {10, "theory validation suite", 600, c10},
      {11, "extended AG3(4,4) checks", 3600, c11},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
    }
  }
  int failed = 0;
  // E1 and E2 come from the first two embedding searches; criteria that use
  // them share one discovery run, timed against the search budget.
  const std::set<int> uses_family{3, 5, 6, 7, 8};
  if (only.empty() || std::any_of(only.begin(), only.end(), [&](int i) { return uses_family.count(i) > 0; })) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string err;
    try {
      family();
    } catch (const std::exception& e) {
      ok = false;
      err = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= secs <= 1800;
    std::printf("%s setup: two-stage embedding search (%.2fs)%s\n", ok ? "PASS" : "FAIL", secs, err.c_str());
    if (!ok) ++failed;
  }
  for (const auto& cr : all) {
    if (!only.empty() && !only.count(cr.id)) continue;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_s) {
      c.ok = false;
      c.detail << " over budget";
    }
    failed += !c.ok;
    std::printf("%s criterion %d: %s (%.2fs)%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.title, secs,
                c.detail.str().c_str());
  }
  return failed == 0 ? 0 : 1;
}
