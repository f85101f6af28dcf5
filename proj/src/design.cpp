#include "embedrank/design.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "embedrank/error.hpp"

namespace embedrank {
namespace {

using u128 = unsigned __int128;

u128 binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Colex rank of a strictly increasing subset.
std::uint64_t colex_rank(const std::vector<std::uint32_t>& s) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += static_cast<std::uint64_t>(binom(s[i], i + 1));
  return r;
}

template <class F>
void for_each_subset(const Block& blk, std::size_t t, F&& f) {
  if (t > blk.size()) return;
  std::vector<std::size_t> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint32_t> sub(t);
  while (true) {
    for (std::size_t i = 0; i < t; ++i) sub[i] = blk[idx[i]];
    f(sub);
    std::size_t i = t;
    while (i > 0 && idx[i - 1] == blk.size() - t + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

/// Every point in exactly r blocks and every pair in exactly lambda blocks.
bool pair_balanced(std::size_t v, const std::vector<Block>& blocks, std::uint64_t r, std::uint64_t lambda) {
  std::vector<std::uint64_t> rep(v, 0);
  std::vector<std::uint64_t> pairs(v * v, 0);
  for (const auto& blk : blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
      ++rep[blk[i]];
      for (std::size_t j = i + 1; j < blk.size(); ++j) ++pairs[blk[i] * v + blk[j]];
    }
  }
  for (std::size_t x = 0; x < v; ++x) {
    if (rep[x] != r) return false;
    for (std::size_t y = x + 1; y < v; ++y) {
      if (pairs[x * v + y] != lambda) return false;
    }
  }
  return true;
}

}  // namespace

IncidenceStructure::IncidenceStructure(std::size_t v, std::vector<Block> blocks, std::string name)
    : v_(v), blocks_(std::move(blocks)), name_(std::move(name)) {
  for (auto& blk : blocks_) {
    std::sort(blk.begin(), blk.end());
    if (std::adjacent_find(blk.begin(), blk.end()) != blk.end()) {
      throw Error(ErrorCode::BadIndex, "repeated point within a block");
    }
    if (!blk.empty() && blk.back() >= v_) throw Error(ErrorCode::BadIndex, "point index out of range");
  }
}

Matrix IncidenceStructure::incidence(int p) const {
  Matrix a(v_, blocks_.size(), p);
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    for (auto x : blocks_[j]) a.set(x, j, 1);
  }
  return a;
}

std::vector<BitVec> IncidenceStructure::block_bits() const {
  std::vector<BitVec> out;
  out.reserve(blocks_.size());
  for (const auto& blk : blocks_) {
    BitVec bits(v_);
    for (auto x : blk) bits.set(x);
    out.push_back(std::move(bits));
  }
  return out;
}

std::vector<BitVec> IncidenceStructure::point_rows() const {
  std::vector<BitVec> out(v_, BitVec(blocks_.size()));
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    for (auto x : blocks_[j]) out[x].set(j);
  }
  return out;
}

std::optional<std::size_t> IncidenceStructure::block_size() const {
  if (blocks_.empty()) return std::nullopt;
  const auto k = blocks_.front().size();
  for (const auto& blk : blocks_) {
    if (blk.size() != k) return std::nullopt;
  }
  return k;
}

void check_resolution(const IncidenceStructure& d, const Resolution& r) {
  std::vector<int> seen(d.b(), 0);
  const auto bits = d.block_bits();
  for (const auto& cls : r.classes) {
    if (cls.size() != r.class_size) throw Error(ErrorCode::WrongParameters, "parallel class of wrong size");
    BitVec cover(d.v());
    std::size_t total = 0;
    for (auto j : cls) {
      if (j >= d.b()) throw Error(ErrorCode::BadIndex, "resolution references a missing block");
      if (seen[j]++) throw Error(ErrorCode::WrongParameters, "block appears in two classes");
      if (cover.intersects(bits[j])) throw Error(ErrorCode::WrongParameters, "class blocks are not disjoint");
      cover |= bits[j];
      total += d.block(j).size();
    }
    if (total != d.v()) throw Error(ErrorCode::WrongParameters, "class does not cover the points");
  }
  for (auto s : seen) {
    if (s != 1) throw Error(ErrorCode::WrongParameters, "resolution does not cover every block");
  }
}

std::optional<DesignParams> verify_tdesign(const IncidenceStructure& d, std::size_t t) {
  const auto k = d.block_size();
  if (!k || t > *k || t > d.v()) return std::nullopt;
  const std::size_t v = d.v();
  std::uint64_t lambda = 0;
  if (t == 0) {
    lambda = d.b();
  } else {
    const u128 subsets = binom(v, t);
    if (subsets > (u128{1} << 28)) throw Error(ErrorCode::TooLarge, "too many t-subsets to count");
    std::vector<std::uint32_t> count(static_cast<std::size_t>(subsets), 0);
    for (const auto& blk : d.blocks()) {
      for_each_subset(blk, t, [&](const std::vector<std::uint32_t>& s) { ++count[colex_rank(s)]; });
    }
    lambda = count.front();
    for (auto c : count) {
      if (c != lambda) return std::nullopt;
    }
  }
  DesignParams p;
  p.t = t;
  p.v = v;
  p.k = *k;
  p.lambda = lambda;
  for (std::size_t s = 0; s <= t; ++s) {
    const u128 num = u128{lambda} * binom(v - s, t - s);
    const u128 den = binom(*k - s, t - s);
    if (den == 0 || num % den != 0) return std::nullopt;
    p.lambda_s.push_back(static_cast<std::uint64_t>(num / den));
  }
  p.b = p.lambda_s[0];
  if (p.b != d.b()) return std::nullopt;
  if (t >= 1) {
    p.r = p.lambda_s[1];
  } else if (v > 0 && (d.b() * *k) % v == 0) {
    p.r = d.b() * *k / v;
  }
  p.symmetric = t >= 2 && p.b == v;
  p.fisher = !(t >= 2 && v > *k && *k > 0) || p.b >= v;
  return p;
}

Restriction residual_map(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty) {
  if (block_idx >= d.b()) throw Error(ErrorCode::BadIndex, "block index out of range");
  std::vector<bool> in_block(d.v(), false);
  for (auto x : d.block(block_idx)) in_block[x] = true;
  Restriction out;
  std::vector<std::uint32_t> remap(d.v(), 0);
  for (std::size_t x = 0; x < d.v(); ++x) {
    if (!in_block[x]) {
      remap[x] = static_cast<std::uint32_t>(out.point_origin.size());
      out.point_origin.push_back(x);
    }
  }
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < d.b(); ++j) {
    if (j == block_idx) continue;
    Block nb;
    for (auto x : d.block(j)) {
      if (!in_block[x]) nb.push_back(remap[x]);
    }
    if (nb.empty() && !keep_empty) continue;
    blocks.push_back(std::move(nb));
    out.block_origin.push_back(j);
  }
  out.design = IncidenceStructure(out.point_origin.size(), std::move(blocks), d.name() + "_res");
  return out;
}

Restriction derived_map(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty) {
  if (block_idx >= d.b()) throw Error(ErrorCode::BadIndex, "block index out of range");
  const auto& base = d.block(block_idx);
  std::vector<std::int64_t> remap(d.v(), -1);
  Restriction out;
  for (auto x : base) {
    remap[x] = static_cast<std::int64_t>(out.point_origin.size());
    out.point_origin.push_back(x);
  }
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < d.b(); ++j) {
    if (j == block_idx) continue;
    Block nb;
    for (auto x : d.block(j)) {
      if (remap[x] >= 0) nb.push_back(static_cast<std::uint32_t>(remap[x]));
    }
    if (nb.empty() && !keep_empty) continue;
    blocks.push_back(std::move(nb));
    out.block_origin.push_back(j);
  }
  out.design = IncidenceStructure(out.point_origin.size(), std::move(blocks), d.name() + "_der");
  return out;
}

IncidenceStructure residual(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty) {
  return residual_map(d, block_idx, keep_empty).design;
}

IncidenceStructure derived(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty) {
  return derived_map(d, block_idx, keep_empty).design;
}

std::map<std::size_t, std::size_t> intersection_profile(const IncidenceStructure& d) {
  std::map<std::size_t, std::size_t> out;
  const auto bits = d.block_bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    for (std::size_t j = i + 1; j < bits.size(); ++j) ++out[bits[i].and_count(bits[j])];
  }
  return out;
}

std::optional<AffineResolution> is_affine_resolvable(const IncidenceStructure& d) {
  const auto params = verify_tdesign(d, 2);
  if (!params) return std::nullopt;
  const std::size_t v = params->v;
  const std::size_t k = params->k;
  if (k == 0 || k >= v || v % k != 0) return std::nullopt;
  if (params->b != v + params->r - 1) return std::nullopt;
  if ((k * k) % v != 0) return std::nullopt;
  const std::size_t mu = k * k / v;
  const std::size_t q = v / k;

  const auto bits = d.block_bits();
  std::vector<std::size_t> parent(d.b());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < bits.size(); ++i) {
    for (std::size_t j = i + 1; j < bits.size(); ++j) {
      const auto c = bits[i].and_count(bits[j]);
      if (c == 0) {
        parent[find(j)] = find(i);
      } else if (c != mu) {
        return std::nullopt;
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < d.b(); ++j) groups[find(j)].push_back(j);
  AffineResolution out;
  out.q = q;
  out.mu = mu;
  out.resolution.class_size = q;
  for (auto& [root, cls] : groups) out.resolution.classes.push_back(std::move(cls));
  std::sort(out.resolution.classes.begin(), out.resolution.classes.end());
  try {
    check_resolution(d, out.resolution);
  } catch (const Error&) {
    return std::nullopt;
  }
  return out;
}

bool is_simple(const IncidenceStructure& d) {
  auto blocks = d.blocks();
  std::sort(blocks.begin(), blocks.end());
  if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end()) return false;
  auto rows = d.point_rows();
  std::sort(rows.begin(), rows.end());
  return std::adjacent_find(rows.begin(), rows.end()) == rows.end();
}

BlockMultiset block_multiset(const IncidenceStructure& d) {
  BlockMultiset out;
  std::map<Block, std::size_t> index;
  for (const auto& blk : d.blocks()) {
    auto [it, inserted] = index.emplace(blk, out.distinct.size());
    if (inserted) {
      out.distinct.push_back(blk);
      out.multiplicity.push_back(0);
    }
    ++out.multiplicity[it->second];
    out.class_of.push_back(it->second);
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> affine_family_params(std::size_t v, std::size_t k,
                                                                        std::uint64_t lambda) {
  if (k < 1 || v % k != 0) return std::nullopt;
  const std::size_t q = v / k;
  if (q < 2) return std::nullopt;
  std::size_t n = 0;
  std::size_t pw = 1;
  while (pw < v) {
    pw *= q;
    ++n;
  }
  if (pw != v || n < 2) return std::nullopt;
  if (k != ipow(q, n - 1)) return std::nullopt;
  if (lambda != (k - 1) / (q - 1) || (k - 1) % (q - 1) != 0) return std::nullopt;
  return std::make_pair(q, n);
}

std::optional<GoodBlock> good_block(const IncidenceStructure& d, std::size_t block_idx) {
  if (block_idx >= d.b()) throw Error(ErrorCode::BadIndex, "block index out of range");
  const auto params = verify_tdesign(d, 2);
  if (!params) throw Error(ErrorCode::WrongParameters, "not a 2-design");
  const auto family = affine_family_params(params->v, params->k, params->lambda);
  if (!family) throw Error(ErrorCode::WrongParameters, "parameters are not those of AG_{n-1}(n,q)");
  const auto aff = is_affine_resolvable(d);
  if (!aff) throw Error(ErrorCode::WrongParameters, "design is not affine resolvable");
  const auto [q, n] = *family;

  const auto der = derived_map(d, block_idx, false);
  const auto ms = block_multiset(der.design);
  const std::size_t ks = ipow(q, n - 2);
  const std::size_t vs = ipow(q, n - 1);
  const std::size_t rs = (vs - 1) / (q - 1);
  const std::size_t ls = (ks - 1) / (q - 1);
  const std::size_t bs = q * rs;
  if (ms.distinct.size() != bs) return std::nullopt;
  for (std::size_t i = 0; i < ms.distinct.size(); ++i) {
    if (ms.multiplicity[i] != q || ms.distinct[i].size() != ks) return std::nullopt;
  }
  if (!pair_balanced(vs, ms.distinct, rs, ls)) return std::nullopt;

  GoodBlock out;
  out.q = q;
  out.n = n;
  out.simple_design = IncidenceStructure(vs, ms.distinct, d.name() + "_S");

  // derived-design class of every block of D other than B and its parallels
  std::vector<std::int64_t> label(d.b(), -1);
  for (std::size_t i = 0; i < der.block_origin.size(); ++i) {
    label[der.block_origin[i]] = static_cast<std::int64_t>(ms.class_of[i]);
  }
  const auto res = residual_map(d, block_idx, false);
  const std::size_t small = vs - ks;
  std::vector<Block> sub_blocks;
  out.resolution.class_size = q;
  out.resolution.classes.assign(bs, {});
  for (std::size_t i = 0; i < res.design.b(); ++i) {
    if (res.design.block(i).size() != small) continue;
    const auto origin = res.block_origin[i];
    if (label[origin] < 0) return std::nullopt;
    out.resolution.classes[static_cast<std::size_t>(label[origin])].push_back(sub_blocks.size());
    sub_blocks.push_back(res.design.block(i));
    out.substructure_origin.push_back(origin);
  }
  out.residual_points = res.point_origin;
  out.substructure = IncidenceStructure(res.design.v(), std::move(sub_blocks), d.name() + "_sub");
  check_resolution(out.substructure, out.resolution);
  return out;
}

std::optional<NormalBlock> normal_block(const IncidenceStructure& d, std::size_t block_idx, std::size_t q) {
  if (block_idx >= d.b()) throw Error(ErrorCode::BadIndex, "block index out of range");
  if (q < 2) throw Error(ErrorCode::WrongParameters, "q must be at least 2");
  const auto params = verify_tdesign(d, 2);
  if (!params || !params->symmetric) throw Error(ErrorCode::WrongParameters, "not a symmetric 2-design");
  // v = (q^3 mu - 1)/(q-1), k = (q^2 mu - 1)/(q-1), lambda = (q mu - 1)/(q-1)
  const std::size_t knum = params->k * (q - 1) + 1;
  if (knum % (q * q) != 0) throw Error(ErrorCode::WrongParameters, "block size does not fit the family");
  const std::size_t mu = knum / (q * q);
  if (params->v * (q - 1) + 1 != q * q * q * mu || params->lambda * (q - 1) + 1 != q * mu) {
    throw Error(ErrorCode::WrongParameters, "parameters do not fit the family");
  }
  const std::size_t v0 = (q * q * mu - 1) / (q - 1);
  const std::size_t k0 = (q * mu - 1) / (q - 1);
  if ((mu - 1) % (q - 1) != 0) return std::nullopt;
  const std::size_t l0 = (mu - 1) / (q - 1);

  const auto der = derived(d, block_idx, false);
  const auto ms = block_multiset(der);
  if (ms.distinct.size() != v0) return std::nullopt;
  for (std::size_t i = 0; i < ms.distinct.size(); ++i) {
    if (ms.multiplicity[i] != q || ms.distinct[i].size() != k0) return std::nullopt;
  }
  if (!pair_balanced(v0, ms.distinct, k0, l0)) return std::nullopt;
  NormalBlock out;
  out.base = IncidenceStructure(v0, ms.distinct, d.name() + "_D0");
  out.degenerate = k0 <= 1;
  return out;
}

}  // namespace embedrank
