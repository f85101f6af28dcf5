#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "embedrank/code.hpp"
#include "embedrank/design.hpp"
#include "embedrank/iso.hpp"

namespace embedrank {

struct EmbeddabilityReport {
  std::size_t rank_full = 0;
  std::size_t rank_residual = 0;
  bool embeddable = false;  // rank_full == rank_residual + 1
};

/// p-ranks of the incidence matrix and of the residual with respect to a
/// block. Throws BadIndex.
EmbeddabilityReport embeddability(const IncidenceStructure& d, std::size_t block_idx, int p);

struct Thm1Entry {
  std::size_t block = 0;
  bool certified = false;   // block size equals the minimum weight of the column code
  bool embeddable = false;  // direct rank test
};

/// Blocks whose residual is certified embeddable by the minimum-weight
/// criterion, each cross-checked against embeddability().
std::vector<Thm1Entry> thm1_certify(const IncidenceStructure& d, int p, int workers = 0);

struct ParallelUnionCount {
  std::uint64_t count = 0;
  /// Class subsets, one per codeword, in enumeration order.
  std::vector<std::vector<std::size_t>> unions;
};

/// Weight-w codewords of c whose support is exactly a union of classes of r.
ParallelUnionCount parallel_union_codewords(const LinearCode& c, const Resolution& r, std::size_t w,
                                            int workers = 0);

struct NecessaryCheck {
  std::uint64_t required = 0;
  std::uint64_t found = 0;
  bool passes = false;
};

/// Count of weight-2q^(n-1) parallel-union codewords in the row code of D''
/// against (p-1) C(q^(n-1), 2). `r` overrides the resolution induced by D.
/// Throws WrongParameters, NotGoodBlock.
NecessaryCheck thm5_necessary(const IncidenceStructure& d, std::size_t block_idx,
                              const std::optional<Resolution>& r = std::nullopt, int workers = 0);

/// The 48 x 84 matrix [M'' | parallel blocks | 0] and its bookkeeping.
struct SearchInstance {
  GoodBlock good;
  std::size_t block = 0;                  // the block B of D
  std::vector<std::size_t> parallel;      // blocks of D parallel to B
  std::vector<BitVec> rows;               // rows of A2, length b
  std::vector<std::size_t> column_block;  // A2 column -> block of D
  Resolution resolution;                  // of D'', used for candidate rows
  std::size_t fixed_class = 0;
};

SearchInstance search_instance(const IncidenceStructure& d, std::size_t block_idx,
                               const std::optional<Resolution>& r = std::nullopt);

struct FoundDesign {
  std::size_t candidate = 0;
  IncidenceStructure design;
  CanonicalCert cert;
};

struct CandidateReport {
  std::size_t index = 0;
  std::vector<std::size_t> classes;  // the five classes covered by y
  std::size_t dimension = 0;
  std::size_t weight_words = 0;      // codewords of weight r with last coordinate 1
  std::size_t designs = 0;
};

struct IsoClass {
  IncidenceStructure representative;
  CanonicalCert cert;
  std::size_t multiplicity = 0;
};

struct EmbeddingSearchResult {
  std::size_t candidates_examined = 0;
  std::size_t viable_codes = 0;
  std::vector<CandidateReport> viable;
  std::vector<FoundDesign> designs;
  std::vector<IsoClass> iso_classes;  // ordered by first appearance
};

/// Exhaustive search for affine resolvable designs containing the residual
/// of D at block_idx, with y fixed to cover the class of D'' block 0.
/// Limited to q = 4, n = 3; other sizes throw InfeasibleInstance.
EmbeddingSearchResult embedding_search(const IncidenceStructure& d, std::size_t block_idx,
                                       const std::optional<Resolution>& r = std::nullopt, int workers = 0);
EmbeddingSearchResult embedding_search_serial(const IncidenceStructure& d, std::size_t block_idx,
                                              const std::optional<Resolution>& r = std::nullopt);

/// JSON report: candidates, viable codes with dimension and design hashes.
std::string search_report_json(const EmbeddingSearchResult& res);

/// Row space of [A | 0] plus the all-one word of length b + 1.
/// Throws WrongParameters unless D is affine resolvable of the
/// (q^n, q^(n-1), .) family with p | q.
LinearCode sym_embedding_code(const IncidenceStructure& d, int p);

struct SymEmbeddingResult {
  std::size_t weight = 0;          // (q^n - 1)/(q - 1)
  std::size_t needed = 0;          // (q^(n+1) - 1)/(q - 1)
  std::uint64_t weight_words = 0;  // codewords of that weight
  std::vector<IncidenceStructure> designs;
};

SymEmbeddingResult sym_embedding_search(const IncidenceStructure& d, int p, int workers = 0);

/// (v + r, r, lambda) when r = k + lambda.
std::optional<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> quasi_residual_params(std::uint64_t v,
                                                                                             std::uint64_t k,
                                                                                             std::uint64_t lambda);

/// Weight-2q^(n-1) parallel-union codewords of the row code of D against
/// its unique resolution, versus (p-1) C((q^n-1)/(q-1), 2).
NecessaryCheck thm_taf_necessary(const IncidenceStructure& d, int p, int workers = 0);

}  // namespace embedrank
