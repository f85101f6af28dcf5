#include "embedrank/code.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#include "embedrank/enumerate.hpp"
#include "embedrank/error.hpp"
#include "embedrank/parallel.hpp"

namespace embedrank {
namespace {

std::uint64_t checked_size(const LinearCode& c, std::optional<std::uint64_t> cap) {
  const auto size = c.size();
  const auto limit = cap.value_or(enumeration_cap());
  if (!size || *size > limit) {
    throw Error(ErrorCode::TooLarge, "code with " + std::to_string(c.modulus()) + "^" +
                                         std::to_string(c.dimension()) + " codewords exceeds the enumeration cap " +
                                         std::to_string(limit));
  }
  return *size;
}

std::vector<BitVec> binary_basis(const LinearCode& c) { return c.basis().bit_rows(); }

/// Odometer walk over GF(p) combinations [lo, hi) of the basis rows, digit j
/// the coefficient of row j. visit(word, index).
template <class Visit>
void odometer_walk(const LinearCode& c, std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
  if (lo >= hi) return;
  const int p = c.modulus();
  const std::size_t n = c.length();
  const std::size_t k = c.dimension();
  const auto& basis = c.basis();
  std::vector<int> digits(k, 0);
  std::vector<std::uint8_t> word(n, 0);
  std::uint64_t x = lo;
  for (std::size_t j = 0; j < k; ++j) {
    digits[j] = static_cast<int>(x % static_cast<std::uint64_t>(p));
    x /= static_cast<std::uint64_t>(p);
    for (std::size_t col = 0; col < n; ++col) {
      word[col] = static_cast<std::uint8_t>((word[col] + digits[j] * basis.get(j, col)) % p);
    }
  }
  for (std::uint64_t i = lo;;) {
    visit(word, i);
    if (++i >= hi) break;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t col = 0; col < n; ++col) {
        word[col] = static_cast<std::uint8_t>((word[col] + basis.get(j, col)) % p);
      }
      if (++digits[j] < p) break;
      digits[j] = 0;
    }
  }
}

std::size_t byte_weight(const std::vector<std::uint8_t>& w) {
  return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](std::uint8_t x) { return x != 0; }));
}

}  // namespace

std::uint64_t enumeration_cap() {
  if (const char* env = std::getenv("EMBEDRANK_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumerationCap;
}

LinearCode::LinearCode(Matrix generators) : generators_(std::move(generators)) {
  auto r = rref(generators_);
  basis_ = std::move(r.reduced);
  pivots_ = std::move(r.pivots);
}

std::optional<std::uint64_t> LinearCode::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (s > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(modulus())) return std::nullopt;
    s *= static_cast<std::uint64_t>(modulus());
  }
  return s;
}

bool LinearCode::contains(const std::vector<int>& word) const {
  if (word.size() != length()) return false;
  const int p = modulus();
  std::vector<int> w(word.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ((word[i] % p) + p) % p;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const int coef = w[pivots_[i]];
    if (coef == 0) continue;
    for (std::size_t col = 0; col < w.size(); ++col) w[col] = ((w[col] - coef * basis_.get(i, col)) % p + p) % p;
  }
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

bool LinearCode::contains(const BitVec& word) const {
  if (word.size() != length()) return false;
  if (modulus() != 2) {
    std::vector<int> w(word.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = word.test(i) ? 1 : 0;
    return contains(w);
  }
  BitVec w = word;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (w.test(pivots_[i])) w ^= basis_.bit_row(i);
  }
  return w.none();
}

WeightDistribution weight_distribution_serial(const LinearCode& c, std::optional<std::uint64_t> cap) {
  const auto total = checked_size(c, cap);
  std::vector<std::uint64_t> hist(c.length() + 1, 0);
  if (c.modulus() == 2) {
    const auto basis = binary_basis(c);
    const BitVec zero(c.length());
    const std::size_t nw = zero.word_count();
    gray_walk(basis, zero, 0, total, [&](const std::uint64_t* w, std::uint64_t) { ++hist[popcount_words(w, nw)]; });
  } else {
    odometer_walk(c, 0, total, [&](const std::vector<std::uint8_t>& w, std::uint64_t) { ++hist[byte_weight(w)]; });
  }
  WeightDistribution out;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i]) out.counts[i] = hist[i];
  }
  return out;
}

WeightDistribution weight_distribution(const LinearCode& c, int workers, std::optional<std::uint64_t> cap) {
  const auto total = checked_size(c, cap);
  const int threads = resolve_workers(workers);
  const auto bounds = split_range(total, static_cast<std::size_t>(threads) * 4);
  const auto parts = static_cast<std::int64_t>(bounds.size() - 1);
  std::vector<std::vector<std::uint64_t>> hists(bounds.size() - 1, std::vector<std::uint64_t>(c.length() + 1, 0));
  const auto basis = c.modulus() == 2 ? binary_basis(c) : std::vector<BitVec>{};
  const BitVec zero(c.length());
  const std::size_t nw = zero.word_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t part = 0; part < parts; ++part) {
    auto& hist = hists[static_cast<std::size_t>(part)];
    const auto lo = bounds[static_cast<std::size_t>(part)];
    const auto hi = bounds[static_cast<std::size_t>(part) + 1];
    if (c.modulus() == 2) {
      gray_walk(basis, zero, lo, hi, [&](const std::uint64_t* w, std::uint64_t) { ++hist[popcount_words(w, nw)]; });
    } else {
      odometer_walk(c, lo, hi, [&](const std::vector<std::uint8_t>& w, std::uint64_t) { ++hist[byte_weight(w)]; });
    }
  }
  WeightDistribution out;
  for (std::size_t i = 0; i <= c.length(); ++i) {
    std::uint64_t s = 0;
    for (const auto& h : hists) s += h[i];
    if (s) out.counts[i] = s;
  }
  return out;
}

std::size_t min_weight(const LinearCode& c, int workers) {
  const auto wd = weight_distribution(c, workers);
  for (const auto& [w, count] : wd.counts) {
    if (w > 0) return w;
  }
  return 0;
}

Matrix codewords_of_weight_serial(const LinearCode& c, std::size_t w) {
  const auto total = checked_size(c, std::nullopt);
  Matrix out(0, c.length(), c.modulus());
  if (c.modulus() == 2) {
    const auto basis = binary_basis(c);
    const BitVec zero(c.length());
    const std::size_t nw = zero.word_count();
    gray_walk(basis, zero, 0, total, [&](const std::uint64_t* words, std::uint64_t) {
      if (popcount_words(words, nw) == w) out.append_row(BitVec::from_words({words, nw}, c.length()));
    });
  } else {
    odometer_walk(c, 0, total, [&](const std::vector<std::uint8_t>& word, std::uint64_t) {
      if (byte_weight(word) == w) out.append_row(std::vector<int>(word.begin(), word.end()));
    });
  }
  return out;
}

Matrix codewords_of_weight(const LinearCode& c, std::size_t w, int workers) {
  const auto total = checked_size(c, std::nullopt);
  const int threads = resolve_workers(workers);
  const auto bounds = split_range(total, static_cast<std::size_t>(threads) * 4);
  const auto parts = static_cast<std::int64_t>(bounds.size() - 1);
  std::vector<Matrix> found(bounds.size() - 1, Matrix(0, c.length(), c.modulus()));
  const auto basis = c.modulus() == 2 ? binary_basis(c) : std::vector<BitVec>{};
  const BitVec zero(c.length());
  const std::size_t nw = zero.word_count();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t part = 0; part < parts; ++part) {
    auto& mine = found[static_cast<std::size_t>(part)];
    const auto lo = bounds[static_cast<std::size_t>(part)];
    const auto hi = bounds[static_cast<std::size_t>(part) + 1];
    if (c.modulus() == 2) {
      gray_walk(basis, zero, lo, hi, [&](const std::uint64_t* words, std::uint64_t) {
        if (popcount_words(words, nw) == w) mine.append_row(BitVec::from_words({words, nw}, c.length()));
      });
    } else {
      odometer_walk(c, lo, hi, [&](const std::vector<std::uint8_t>& word, std::uint64_t) {
        if (byte_weight(word) == w) mine.append_row(std::vector<int>(word.begin(), word.end()));
      });
    }
  }
  Matrix out(0, c.length(), c.modulus());
  for (const auto& m : found) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m.packed()) {
        out.append_row(m.bit_row(i));
      } else {
        out.append_row(m.row(i));
      }
    }
  }
  return out;
}

LinearCode residual_code(const LinearCode& c, const std::vector<int>& y) {
  if (!c.contains(y)) throw Error(ErrorCode::NotACodeword, "word is not in the code");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] % c.modulus() == 0) keep.push_back(i);
  }
  return LinearCode(c.basis().select_columns(keep));
}

HillNewtonReport hill_newton(const LinearCode& c, const std::vector<int>& y) {
  if (!c.contains(y)) throw Error(ErrorCode::NotACodeword, "word is not in the code");
  HillNewtonReport r;
  r.weight = static_cast<std::size_t>(std::count_if(y.begin(), y.end(), [&](int x) { return x % c.modulus() != 0; }));
  if (r.weight == 0) throw Error(ErrorCode::NotACodeword, "the zero word has no residual code");
  r.min_weight = min_weight(c);
  r.guaranteed = r.weight == r.min_weight;
  r.drop = c.dimension() - residual_code(c, y).dimension();
  return r;
}

std::uint64_t rudolph_bound(std::uint64_t r, std::uint64_t lambda) {
  if (r < 1 || lambda < 1) throw Error(ErrorCode::WrongParameters, "r and lambda must be positive");
  return (r + lambda - 1) / (2 * lambda);
}

std::optional<std::uint64_t> johnson_restricted(std::uint64_t n, std::uint64_t d, std::uint64_t w) {
  if (w < 1 || w > n) throw Error(ErrorCode::WrongParameters, "need 1 <= w <= n");
  // distances between equal-weight binary words are even
  const auto delta = static_cast<std::int64_t>((d + 1) / 2);
  const auto ni = static_cast<std::int64_t>(n);
  const auto wi = static_cast<std::int64_t>(w);
  const std::int64_t den = wi * wi - wi * ni + delta * ni;
  if (den <= 0) return std::nullopt;
  return static_cast<std::uint64_t>(delta * ni / den);
}

LinearCode rm_code(std::size_t r, std::size_t m) {
  if (r > m) throw Error(ErrorCode::BadOrder, "order exceeds the number of variables");
  if (m > 20) throw Error(ErrorCode::TooLarge, "Reed-Muller length too large");
  const std::size_t n = std::size_t{1} << m;
  Matrix g(0, n, 2);
  // monomials by degree, then by increasing variable mask
  for (std::size_t deg = 0; deg <= r; ++deg) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != deg) continue;
      BitVec row(n);
      for (std::size_t x = 0; x < n; ++x) {
        if ((x & mask) == mask) row.set(x);
      }
      g.append_row(row);
    }
  }
  return LinearCode(std::move(g));
}

LinearCode punctured_rm_code(std::size_t r, std::size_t m, std::size_t coord) {
  const auto full = rm_code(r, m);
  if (coord >= full.length()) throw Error(ErrorCode::BadIndex, "coordinate out of range");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < full.length(); ++i) {
    if (i != coord) keep.push_back(i);
  }
  return LinearCode(full.generators().select_columns(keep));
}

bool is_bent(const std::vector<int>& tt) {
  const std::size_t n = tt.size();
  std::size_t vars = 0;
  while ((std::size_t{1} << vars) < n) ++vars;
  if (n == 0 || (std::size_t{1} << vars) != n || vars % 2 != 0) return false;
  std::vector<std::int64_t> spec(n);
  for (std::size_t x = 0; x < n; ++x) spec[x] = (tt[x] & 1) ? -1 : 1;
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const auto a = spec[j];
        const auto b = spec[j + h];
        spec[j] = a + b;
        spec[j + h] = a - b;
      }
    }
  }
  const std::int64_t flat = std::int64_t{1} << (vars / 2);
  return std::all_of(spec.begin(), spec.end(), [&](std::int64_t s) { return s == flat || s == -flat; });
}

LinearCode sdp_code(const std::vector<int>& tt) {
  if (!is_bent(tt)) throw Error(ErrorCode::NotBent, "truth table is not a bent function");
  std::size_t vars = 0;
  while ((std::size_t{1} << vars) < tt.size()) ++vars;
  Matrix g = rm_code(1, vars).generators();
  BitVec f(tt.size());
  for (std::size_t x = 0; x < tt.size(); ++x) f.set(x, (tt[x] & 1) != 0);
  g.append_row(f);
  return LinearCode(std::move(g));
}

IncidenceStructure min_weight_design(const LinearCode& c, int workers) {
  const auto d = min_weight(c, workers);
  const auto words = codewords_of_weight(c, d, workers);
  std::vector<Block> blocks;
  std::set<Block> seen;
  for (std::size_t i = 0; i < words.rows(); ++i) {
    Block blk;
    for (std::size_t j = 0; j < words.cols(); ++j) {
      if (words.get(i, j)) blk.push_back(static_cast<std::uint32_t>(j));
    }
    // over GF(p), p > 2, scalar multiples share a support
    if (c.modulus() > 2 && !seen.insert(blk).second) continue;
    blocks.push_back(std::move(blk));
  }
  return IncidenceStructure(c.length(), std::move(blocks), "minwt");
}

}  // namespace embedrank
