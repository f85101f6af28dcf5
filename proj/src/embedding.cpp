#include "embedrank/embedding.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

#include "embedrank/enumerate.hpp"
#include "embedrank/error.hpp"
#include "embedrank/parallel.hpp"

namespace embedrank {
namespace {

std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int characteristic(std::size_t q) {
  for (std::size_t p = 2; p <= q; ++p) {
    if (q % p == 0) return static_cast<int>(p);
  }
  return 0;
}

std::vector<std::uint32_t> support_of(const Matrix& m, std::size_t row) {
  if (m.packed()) return m.bit_row(row).support();
  std::vector<std::uint32_t> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.get(row, c)) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

/// All sets of `need` words with pairwise intersection `lam` whose column
/// sums equal `target`. Sets are listed as increasing index lists in
/// lexicographic order.
class RowCompletion {
 public:
  RowCompletion(const std::vector<BitVec>& words, std::size_t need, std::size_t lam, std::vector<int> target)
      : words_(words), need_(need), target_(std::move(target)) {
    const std::size_t n = words.size();
    compat_.assign(n, BitVec(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (words[i].and_count(words[j]) == lam) {
          compat_[i].set(j);
          compat_[j].set(i);
        }
      }
    }
    supports_.reserve(n);
    for (const auto& w : words) supports_.push_back(w.support());
  }

  std::vector<std::vector<std::size_t>> run() {
    BitVec all(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) all.set(i);
    std::vector<std::size_t> chosen;
    dfs(all, chosen);
    return std::move(found_);
  }

 private:
  bool feasible(const BitVec& allowed, std::size_t remaining) const {
    if (allowed.count() < remaining) return false;
    std::vector<int> avail(target_.size(), 0);
    for (auto i : allowed.support()) {
      for (auto c : supports_[i]) ++avail[c];
    }
    for (std::size_t c = 0; c < target_.size(); ++c) {
      const int deficit = target_[c];
      if (deficit < 0 || avail[c] < deficit) return false;
      if (static_cast<std::size_t>(deficit) > remaining) return false;
    }
    return true;
  }

  void dfs(const BitVec& allowed, std::vector<std::size_t>& chosen) {
    const std::size_t remaining = need_ - chosen.size();
    if (remaining == 0) {
      if (std::all_of(target_.begin(), target_.end(), [](int t) { return t == 0; })) found_.push_back(chosen);
      return;
    }
    if (!feasible(allowed, remaining)) return;
    for (auto i : allowed.support()) {
      // words after i that are compatible with everything chosen so far
      BitVec next = allowed & compat_[i];
      for (std::size_t j = 0; j <= i; ++j) next.set(j, false);
      bool over = false;
      for (auto c : supports_[i]) over |= --target_[c] < 0;
      if (!over) {
        chosen.push_back(i);
        dfs(next, chosen);
        chosen.pop_back();
      }
      for (auto c : supports_[i]) ++target_[c];
    }
  }

  const std::vector<BitVec>& words_;
  std::size_t need_;
  std::vector<int> target_;
  std::vector<BitVec> compat_;
  std::vector<std::vector<std::uint32_t>> supports_;
  std::vector<std::vector<std::size_t>> found_;
};

std::vector<std::vector<std::size_t>> four_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

struct CandidateOutcome {
  CandidateReport report;
  std::vector<FoundDesign> designs;
  bool viable = false;
};

struct SearchContext {
  const IncidenceStructure* d = nullptr;
  SearchInstance inst;
  std::vector<BitVec> basis;
  std::size_t k = 0;        // block size of D
  std::size_t r = 0;        // replication number of D
  std::size_t lambda = 0;
  std::vector<int> target;  // column deficits after the rows of A2
  std::vector<std::size_t> others;
  std::vector<std::vector<std::size_t>> subsets;
};

SearchContext make_context(const IncidenceStructure& d, std::size_t block_idx, const std::optional<Resolution>& r) {
  SearchContext ctx;
  ctx.d = &d;
  ctx.inst = search_instance(d, block_idx, r);
  const auto& inst = ctx.inst;
  if (inst.good.q != 4 || inst.good.n != 3) {
    throw Error(ErrorCode::InfeasibleInstance, "embedding search is limited to q = 4, n = 3");
  }
  const auto params = verify_tdesign(d, 2);
  ctx.k = params->k;
  ctx.r = params->r;
  ctx.lambda = params->lambda;
  const std::size_t b = d.b();
  ctx.target.assign(b, static_cast<int>(ctx.k));
  for (const auto& row : inst.rows) {
    for (auto c : row.support()) --ctx.target[c];
  }
  std::vector<BitVec> gens = inst.rows;
  ctx.basis = rref(Matrix::from_bit_rows(gens, b)).reduced.bit_rows();
  for (std::size_t c = 0; c < inst.resolution.classes.size(); ++c) {
    if (c != inst.fixed_class) ctx.others.push_back(c);
  }
  ctx.subsets = four_subsets(ctx.others.size());
  return ctx;
}

IncidenceStructure assemble(const SearchContext& ctx, const std::vector<BitVec>& new_rows) {
  const auto& inst = ctx.inst;
  const auto& d = *ctx.d;
  std::vector<Block> blocks(d.b());
  auto add_row = [&](const BitVec& row, std::uint32_t point) {
    for (auto c : row.support()) blocks[inst.column_block[c]].push_back(point);
  };
  for (std::size_t i = 0; i < inst.rows.size(); ++i) {
    add_row(inst.rows[i], static_cast<std::uint32_t>(inst.good.residual_points[i]));
  }
  const auto& b_points = d.block(inst.block);
  for (std::size_t i = 0; i < new_rows.size(); ++i) add_row(new_rows[i], b_points[i]);
  return IncidenceStructure(d.v(), std::move(blocks), d.name() + "_emb");
}

CandidateOutcome evaluate_candidate(const SearchContext& ctx, std::size_t index) {
  const auto& inst = ctx.inst;
  const std::size_t b = ctx.d->b();
  CandidateOutcome out;
  out.report.index = index;
  out.report.classes.push_back(inst.fixed_class);
  for (auto s : ctx.subsets[index]) out.report.classes.push_back(ctx.others[s]);
  std::sort(out.report.classes.begin(), out.report.classes.end());

  BitVec y(b);
  y.set(b - 1);
  for (auto c : out.report.classes) {
    for (auto j : inst.resolution.classes[c]) y.set(j);
  }
  out.report.dimension = ctx.basis.size() + 1;

  // words of y + span(A2) that can serve as rows for the points of B
  std::vector<BitVec> words;
  std::size_t weight_words = 0;
  const std::size_t nw = y.word_count();
  gray_walk(ctx.basis, y, 0, std::uint64_t{1} << ctx.basis.size(), [&](const std::uint64_t* w, std::uint64_t) {
    if (popcount_words(w, nw) != ctx.r) return;
    ++weight_words;
    auto word = BitVec::from_words({w, nw}, b);
    for (const auto& row : inst.rows) {
      if (row.and_count(word) != ctx.lambda) return;
    }
    words.push_back(std::move(word));
  });
  out.report.weight_words = weight_words;
  out.viable = weight_words >= ctx.k;
  if (!out.viable) return out;

  RowCompletion completion(words, ctx.k, ctx.lambda, ctx.target);
  std::vector<CanonicalCert> seen;
  for (const auto& pick : completion.run()) {
    std::vector<BitVec> rows;
    for (auto i : pick) rows.push_back(words[i]);
    std::sort(rows.begin(), rows.end());
    FoundDesign f;
    f.candidate = index;
    f.design = assemble(ctx, rows);
    f.cert = canonical_cert(f.design);
    if (std::find(seen.begin(), seen.end(), f.cert) != seen.end()) continue;
    seen.push_back(f.cert);
    out.designs.push_back(std::move(f));
  }
  out.report.designs = out.designs.size();
  return out;
}

EmbeddingSearchResult merge(std::vector<CandidateOutcome> outcomes) {
  EmbeddingSearchResult res;
  res.candidates_examined = outcomes.size();
  for (auto& o : outcomes) {
    if (!o.viable) continue;
    ++res.viable_codes;
    res.viable.push_back(o.report);
    for (auto& f : o.designs) {
      auto it = std::find_if(res.iso_classes.begin(), res.iso_classes.end(),
                             [&](const IsoClass& c) { return c.cert == f.cert; });
      if (it == res.iso_classes.end()) {
        res.iso_classes.push_back({f.design, f.cert, 1});
      } else {
        ++it->multiplicity;
      }
      res.designs.push_back(std::move(f));
    }
  }
  return res;
}

}  // namespace

EmbeddabilityReport embeddability(const IncidenceStructure& d, std::size_t block_idx, int p) {
  if (block_idx >= d.b()) throw Error(ErrorCode::BadIndex, "block index out of range");
  EmbeddabilityReport rep;
  rep.rank_full = rank(d.incidence(p));
  rep.rank_residual = rank(residual(d, block_idx, true).incidence(p));
  rep.embeddable = rep.rank_full == rep.rank_residual + 1;
  return rep;
}

std::vector<Thm1Entry> thm1_certify(const IncidenceStructure& d, int p, int workers) {
  const auto code = LinearCode::from_cols(d.incidence(p));
  const auto dmin = min_weight(code, workers);
  std::vector<Thm1Entry> out;
  for (std::size_t j = 0; j < d.b(); ++j) {
    Thm1Entry e;
    e.block = j;
    e.certified = d.block(j).size() == dmin;
    e.embeddable = embeddability(d, j, p).embeddable;
    out.push_back(e);
  }
  return out;
}

ParallelUnionCount parallel_union_codewords(const LinearCode& c, const Resolution& r, std::size_t w, int workers) {
  std::vector<std::int64_t> class_of(c.length(), -1);
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    for (auto j : r.classes[i]) {
      if (j >= c.length()) throw Error(ErrorCode::WrongParameters, "resolution does not match the code length");
      class_of[j] = static_cast<std::int64_t>(i);
    }
  }
  if (std::any_of(class_of.begin(), class_of.end(), [](std::int64_t x) { return x < 0; })) {
    throw Error(ErrorCode::WrongParameters, "resolution does not cover every coordinate");
  }
  const auto words = codewords_of_weight(c, w, workers);
  ParallelUnionCount out;
  std::vector<std::size_t> hits(r.classes.size());
  for (std::size_t i = 0; i < words.rows(); ++i) {
    std::fill(hits.begin(), hits.end(), 0);
    for (auto j : support_of(words, i)) ++hits[static_cast<std::size_t>(class_of[j])];
    std::vector<std::size_t> classes;
    bool ok = true;
    for (std::size_t k = 0; k < hits.size() && ok; ++k) {
      if (hits[k] == r.classes[k].size()) {
        classes.push_back(k);
      } else if (hits[k] != 0) {
        ok = false;
      }
    }
    if (!ok) continue;
    ++out.count;
    out.unions.push_back(std::move(classes));
  }
  return out;
}

NecessaryCheck thm5_necessary(const IncidenceStructure& d, std::size_t block_idx, const std::optional<Resolution>& r,
                              int workers) {
  const auto gb = good_block(d, block_idx);
  if (!gb) throw Error(ErrorCode::NotGoodBlock, "block " + std::to_string(block_idx) + " is not good");
  if (gb->q < 4) throw Error(ErrorCode::WrongParameters, "the criterion needs q >= 4");
  const int p = characteristic(gb->q);
  const auto res = r.value_or(gb->resolution);
  check_resolution(gb->substructure, res);
  const auto code = LinearCode::from_rows(gb->substructure.incidence(p));
  NecessaryCheck out;
  out.required = static_cast<std::uint64_t>(p - 1) * choose2(ipow(gb->q, gb->n - 1));
  out.found = parallel_union_codewords(code, res, 2 * ipow(gb->q, gb->n - 1), workers).count;
  out.passes = out.found >= out.required;
  return out;
}

SearchInstance search_instance(const IncidenceStructure& d, std::size_t block_idx, const std::optional<Resolution>& r) {
  auto gb = good_block(d, block_idx);
  if (!gb) throw Error(ErrorCode::NotGoodBlock, "block " + std::to_string(block_idx) + " is not good");
  SearchInstance inst;
  inst.block = block_idx;
  inst.resolution = r.value_or(gb->resolution);
  check_resolution(gb->substructure, inst.resolution);
  const auto bits = d.block_bits();
  for (std::size_t j = 0; j < d.b(); ++j) {
    if (j != block_idx && !bits[j].intersects(bits[block_idx])) inst.parallel.push_back(j);
  }
  const std::size_t sub_b = gb->substructure.b();
  if (sub_b + inst.parallel.size() + 1 != d.b()) {
    throw Error(ErrorCode::WrongParameters, "residual blocks do not split into D'' and parallel blocks");
  }
  inst.column_block = gb->substructure_origin;
  inst.column_block.insert(inst.column_block.end(), inst.parallel.begin(), inst.parallel.end());
  inst.column_block.push_back(block_idx);

  const auto sub_rows = gb->substructure.point_rows();
  for (std::size_t i = 0; i < gb->residual_points.size(); ++i) {
    BitVec row(d.b());
    for (auto c : sub_rows[i].support()) row.set(c);
    for (std::size_t t = 0; t < inst.parallel.size(); ++t) {
      if (bits[inst.parallel[t]].test(gb->residual_points[i])) row.set(sub_b + t);
    }
    inst.rows.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < inst.resolution.classes.size(); ++c) {
    const auto& cls = inst.resolution.classes[c];
    if (std::find(cls.begin(), cls.end(), std::size_t{0}) != cls.end()) inst.fixed_class = c;
  }
  inst.good = std::move(*gb);
  return inst;
}

EmbeddingSearchResult embedding_search(const IncidenceStructure& d, std::size_t block_idx,
                                       const std::optional<Resolution>& r, int workers) {
  const auto ctx = make_context(d, block_idx, r);
  const auto n = static_cast<std::int64_t>(ctx.subsets.size());
  std::vector<CandidateOutcome> outcomes(ctx.subsets.size());
  const int threads = resolve_workers(workers);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    outcomes[static_cast<std::size_t>(i)] = evaluate_candidate(ctx, static_cast<std::size_t>(i));
  }
  return merge(std::move(outcomes));
}

EmbeddingSearchResult embedding_search_serial(const IncidenceStructure& d, std::size_t block_idx,
                                              const std::optional<Resolution>& r) {
  const auto ctx = make_context(d, block_idx, r);
  std::vector<CandidateOutcome> outcomes;
  for (std::size_t i = 0; i < ctx.subsets.size(); ++i) outcomes.push_back(evaluate_candidate(ctx, i));
  return merge(std::move(outcomes));
}

std::string search_report_json(const EmbeddingSearchResult& res) {
  nlohmann::ordered_json j;
  j["candidates_examined"] = res.candidates_examined;
  j["viable_codes"] = res.viable_codes;
  auto viable = nlohmann::ordered_json::array();
  for (const auto& c : res.viable) {
    nlohmann::ordered_json e;
    e["candidate"] = c.index;
    e["classes"] = c.classes;
    e["dimension"] = c.dimension;
    e["weight_words"] = c.weight_words;
    e["designs"] = c.designs;
    auto hashes = nlohmann::ordered_json::array();
    for (const auto& f : res.designs) {
      if (f.candidate == c.index) hashes.push_back(f.cert.hex());
    }
    e["certs"] = hashes;
    viable.push_back(std::move(e));
  }
  j["viable"] = std::move(viable);
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : res.iso_classes) {
    nlohmann::ordered_json e;
    e["cert"] = c.cert.hex();
    e["multiplicity"] = c.multiplicity;
    classes.push_back(std::move(e));
  }
  j["iso_classes"] = std::move(classes);
  return j.dump(2) + "\n";
}

namespace {

struct AffineFamily {
  std::size_t q = 0;
  std::size_t n = 0;
  DesignParams params;
  Resolution resolution;
};

AffineFamily affine_family(const IncidenceStructure& d) {
  const auto params = verify_tdesign(d, 2);
  if (!params) throw Error(ErrorCode::WrongParameters, "not a 2-design");
  const auto family = affine_family_params(params->v, params->k, params->lambda);
  if (!family) throw Error(ErrorCode::WrongParameters, "parameters are not those of AG_{n-1}(n,q)");
  const auto aff = is_affine_resolvable(d);
  if (!aff) throw Error(ErrorCode::WrongParameters, "design is not affine resolvable");
  return {family->first, family->second, *params, aff->resolution};
}

}  // namespace

LinearCode sym_embedding_code(const IncidenceStructure& d, int p) {
  const auto fam = affine_family(d);
  if (p < 2 || fam.q % static_cast<std::size_t>(p) != 0) throw Error(ErrorCode::WrongParameters, "p must divide q");
  const std::size_t len = d.b() + 1;
  Matrix m(0, len, p);
  const auto a = d.incidence(p);
  for (std::size_t i = 0; i < d.v(); ++i) {
    auto row = a.row(i);
    row.push_back(0);
    m.append_row(row);
  }
  m.append_row(std::vector<int>(len, 1));
  return LinearCode::from_rows(m);
}

SymEmbeddingResult sym_embedding_search(const IncidenceStructure& d, int p, int workers) {
  const auto fam = affine_family(d);
  const auto code = sym_embedding_code(d, p);
  SymEmbeddingResult out;
  out.weight = fam.params.r;
  out.needed = d.v() + fam.params.r;
  const auto words = codewords_of_weight(code, out.weight, workers);
  out.weight_words = words.rows();
  if (out.weight_words < out.needed || p != 2) return out;

  const std::size_t len = d.b() + 1;
  const auto a = d.incidence(2);
  std::vector<BitVec> old_rows;
  for (std::size_t i = 0; i < d.v(); ++i) {
    BitVec row(len);
    for (auto c : a.bit_row(i).support()) row.set(c);
    old_rows.push_back(std::move(row));
  }
  std::vector<BitVec> cand;
  for (std::size_t i = 0; i < words.rows(); ++i) {
    const auto& w = words.bit_row(i);
    if (!w.test(len - 1)) continue;
    if (std::all_of(old_rows.begin(), old_rows.end(),
                    [&](const BitVec& o) { return o.and_count(w) == fam.params.lambda; })) {
      cand.push_back(w);
    }
  }
  std::vector<int> target(len, static_cast<int>(fam.params.r - fam.params.k));
  target[len - 1] = static_cast<int>(fam.params.r);
  RowCompletion completion(cand, fam.params.r, fam.params.lambda, target);
  for (const auto& pick : completion.run()) {
    std::vector<BitVec> rows;
    for (auto i : pick) rows.push_back(cand[i]);
    std::sort(rows.begin(), rows.end());
    std::vector<Block> blocks(len);
    auto add_row = [&](const BitVec& row, std::uint32_t point) {
      for (auto c : row.support()) blocks[c].push_back(point);
    };
    for (std::size_t i = 0; i < old_rows.size(); ++i) add_row(old_rows[i], static_cast<std::uint32_t>(i));
    for (std::size_t i = 0; i < rows.size(); ++i) add_row(rows[i], static_cast<std::uint32_t>(d.v() + i));
    out.designs.emplace_back(out.needed, std::move(blocks), d.name() + "_sym");
  }
  return out;
}

std::optional<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> quasi_residual_params(std::uint64_t v,
                                                                                             std::uint64_t k,
                                                                                             std::uint64_t lambda) {
  if (k < 2 || v < 2 || lambda == 0) return std::nullopt;
  if ((lambda * (v - 1)) % (k - 1) != 0) return std::nullopt;
  const auto r = lambda * (v - 1) / (k - 1);
  if (r != k + lambda) return std::nullopt;
  return std::make_tuple(v + r, r, lambda);
}

NecessaryCheck thm_taf_necessary(const IncidenceStructure& d, int p, int workers) {
  const auto fam = affine_family(d);
  if (fam.q < 4) throw Error(ErrorCode::WrongParameters, "the criterion needs q >= 4");
  if (p < 2 || fam.q % static_cast<std::size_t>(p) != 0) throw Error(ErrorCode::WrongParameters, "p must divide q");
  const auto code = LinearCode::from_rows(d.incidence(p));
  NecessaryCheck out;
  out.required = static_cast<std::uint64_t>(p - 1) * choose2((ipow(fam.q, fam.n) - 1) / (fam.q - 1));
  out.found = parallel_union_codewords(code, fam.resolution, 2 * ipow(fam.q, fam.n - 1), workers).count;
  out.passes = out.found >= out.required;
  return out;
}

}  // namespace embedrank
