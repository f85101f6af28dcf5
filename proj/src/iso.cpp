#include "embedrank/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <openssl/sha.h>

#include "embedrank/design_io.hpp"
#include "embedrank/error.hpp"

namespace embedrank {
namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xbf58476d1ce4e5b9ULL;
}

/// Ordered partition of the vertex set: cells are contiguous ranges of lab.
struct Partition {
  std::vector<std::uint32_t> lab;   // position -> vertex
  std::vector<std::uint32_t> pos;   // vertex -> position
  std::vector<std::uint32_t> cell;  // vertex -> start of its cell
  std::vector<std::uint32_t> end;   // cell start -> one past its end
  std::uint32_t cells = 0;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

/// Individualization-refinement search over the point/block incidence
/// graph. The canonical leaf is the maximum over (refinement trace, leaf
/// graph); automorphisms are collected from leaves that match the first or
/// the best leaf.
class IrSearch {
 public:
  explicit IrSearch(const IncidenceStructure& d) : v_(d.v()), n_(d.v() + d.b()), adj_(n_) {
    for (std::size_t j = 0; j < d.b(); ++j) {
      const auto bv = static_cast<std::uint32_t>(v_ + j);
      for (auto x : d.block(j)) {
        adj_[x].push_back(bv);
        adj_[bv].push_back(x);
      }
    }
    count_.assign(n_, 0);
    cell_mark_.assign(n_, 0);
    in_queue_.assign(n_, 0);
    row_words_ = words_for(v_);

    // points first, then blocks grouped by multiplicity
    const auto ms = block_multiset(d);
    std::vector<std::pair<std::size_t, std::uint32_t>> blocks;
    for (std::size_t j = 0; j < d.b(); ++j) {
      blocks.emplace_back(ms.multiplicity[ms.class_of[j]], static_cast<std::uint32_t>(v_ + j));
    }
    std::sort(blocks.begin(), blocks.end());
    Partition p;
    p.lab.resize(n_);
    p.pos.resize(n_);
    p.cell.resize(n_);
    p.end.assign(n_, 0);
    std::vector<std::uint32_t> starts;
    for (std::uint32_t x = 0; x < v_; ++x) p.lab[x] = x;
    if (v_ > 0) starts.push_back(0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      p.lab[v_ + i] = blocks[i].second;
      if (i == 0 || blocks[i].first != blocks[i - 1].first) starts.push_back(static_cast<std::uint32_t>(v_ + i));
    }
    for (std::size_t s = 0; s < starts.size(); ++s) {
      const auto e = s + 1 < starts.size() ? starts[s + 1] : static_cast<std::uint32_t>(n_);
      p.end[starts[s]] = e;
      for (auto i = starts[s]; i < e; ++i) p.cell[p.lab[i]] = starts[s];
    }
    for (std::uint32_t i = 0; i < n_; ++i) p.pos[p.lab[i]] = i;
    p.cells = static_cast<std::uint32_t>(starts.size());
    root_trace_ = refine(p, starts);
    root_ = std::move(p);
  }

  void run() {
    std::vector<std::uint32_t> seq;
    std::vector<std::uint64_t> trace{root_trace_};
    if (n_ == 0) return;
    search(root_, seq, trace);
  }

  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<std::uint32_t>& best_lab() const { return best_lab_; }
  std::size_t nodes() const { return nodes_; }
  std::size_t leaves() const { return leaves_; }

 private:
  std::uint64_t refine(Partition& p, std::vector<std::uint32_t> queue) {
    std::uint64_t h = 0x1234567ULL;
    for (auto s : queue) in_queue_[s] = 1;
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> tcells;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frag;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto w0 = queue[head];
      in_queue_[w0] = 0;
      touched.clear();
      for (auto i = w0; i < p.end[w0]; ++i) {
        for (auto u : adj_[p.lab[i]]) {
          if (count_[u]++ == 0) touched.push_back(u);
        }
      }
      tcells.clear();
      for (auto u : touched) {
        const auto c = p.cell[u];
        if (!cell_mark_[c]) {
          cell_mark_[c] = 1;
          tcells.push_back(c);
        }
      }
      std::sort(tcells.begin(), tcells.end());
      for (auto x : tcells) {
        cell_mark_[x] = 0;
        const auto xend = p.end[x];
        frag.clear();
        for (auto i = x; i < xend; ++i) frag.emplace_back(count_[p.lab[i]], p.lab[i]);
        std::sort(frag.begin(), frag.end());
        if (frag.front().first == frag.back().first) {
          h = mix(h, (std::uint64_t{x} << 32) | frag.front().first);
          continue;
        }
        h = mix(h, x);
        std::uint32_t start = x;
        for (std::uint32_t i = 0; i < frag.size(); ++i) {
          const auto at = x + i;
          if (i > 0 && frag[i].first != frag[i - 1].first) {
            p.end[start] = at;
            h = mix(h, (std::uint64_t{frag[i - 1].first} << 32) | (at - start));
            start = at;
            ++p.cells;
          }
          p.lab[at] = frag[i].second;
          p.pos[frag[i].second] = at;
          p.cell[frag[i].second] = start;
        }
        p.end[start] = xend;
        h = mix(h, (std::uint64_t{frag.back().first} << 32) | (xend - start));
        for (std::uint32_t s = x; s < xend; s = p.end[s]) {
          if (!in_queue_[s]) {
            in_queue_[s] = 1;
            queue.push_back(s);
          }
        }
      }
      for (auto u : touched) count_[u] = 0;
    }
    return mix(h, p.cells);
  }

  /// First smallest non-singleton cell.
  std::uint32_t target_cell(const Partition& p) const {
    std::uint32_t best = 0;
    std::uint32_t best_size = 0;
    for (std::uint32_t s = 0; s < n_; s = p.end[s]) {
      const auto size = p.end[s] - s;
      if (size > 1 && (best_size == 0 || size < best_size)) {
        best = s;
        best_size = size;
      }
    }
    return best;
  }

  void individualize(Partition& p, std::uint32_t vertex) const {
    const auto x = p.cell[vertex];
    const auto at = p.pos[vertex];
    const auto other = p.lab[x];
    std::swap(p.lab[x], p.lab[at]);
    p.pos[vertex] = x;
    p.pos[other] = at;
    const auto xend = p.end[x];
    p.end[x] = x + 1;
    p.end[x + 1] = xend;
    for (auto i = x + 1; i < xend; ++i) p.cell[p.lab[i]] = x + 1;
    ++p.cells;
  }

  /// Rows of the relabelled incidence matrix, block positions v..n-1.
  std::vector<std::uint64_t> leaf_cert(const Partition& p) const {
    std::vector<std::uint64_t> cert((n_ - v_) * row_words_, 0);
    for (std::size_t j = v_; j < n_; ++j) {
      const auto row = (j - v_) * row_words_;
      for (auto x : adj_[p.lab[j]]) {
        const auto px = p.pos[x];
        cert[row + px / 64] |= std::uint64_t{1} << (px % 64);
      }
    }
    return cert;
  }

  static int compare_traces(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                            std::size_t len) {
    const auto la = std::min(a.size(), len);
    const auto lb = std::min(b.size(), len);
    for (std::size_t i = 0; i < std::min(la, lb); ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    if (la == lb) return 0;
    return la < lb ? -1 : 1;
  }

  static std::size_t common_prefix(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  void add_automorphism(const std::vector<std::uint32_t>& from_lab, const std::vector<std::uint32_t>& to_lab) {
    Perm g(n_);
    for (std::size_t i = 0; i < n_; ++i) g[from_lab[i]] = to_lab[i];
    if (!is_identity(g)) gens_.push_back(std::move(g));
  }

  std::size_t leaf(const Partition& p, const std::vector<std::uint32_t>& seq,
                   const std::vector<std::uint64_t>& trace) {
    ++leaves_;
    auto cert = leaf_cert(p);
    if (!have_first_) {
      have_first_ = true;
      first_seq_ = best_seq_ = seq;
      first_trace_ = best_trace_ = trace;
      first_lab_ = best_lab_ = p.lab;
      first_cert_ = cert;
      best_cert_ = std::move(cert);
      return seq.size();
    }
    if (trace == first_trace_ && cert == first_cert_) {
      add_automorphism(first_lab_, p.lab);
      return common_prefix(seq, first_seq_);
    }
    int cmp = compare_traces(trace, best_trace_, std::max(trace.size(), best_trace_.size()));
    if (cmp == 0) cmp = cert < best_cert_ ? -1 : (cert == best_cert_ ? 0 : 1);
    if (cmp == 0) {
      add_automorphism(best_lab_, p.lab);
      return common_prefix(seq, best_seq_);
    }
    if (cmp > 0) {
      best_seq_ = seq;
      best_trace_ = trace;
      best_lab_ = p.lab;
      best_cert_ = std::move(cert);
    }
    return seq.size();
  }

  std::size_t search(const Partition& p, std::vector<std::uint32_t>& seq, std::vector<std::uint64_t>& trace) {
    ++nodes_;
    const std::size_t depth = seq.size();
    if (p.cells == n_) return leaf(p, seq, trace);
    const auto x = target_cell(p);
    std::vector<std::uint32_t> members(p.lab.begin() + x, p.lab.begin() + p.end[x]);
    std::sort(members.begin(), members.end());

    UnionFind orbits(n_);
    std::size_t gens_seen = 0;
    std::vector<std::uint32_t> explored;
    for (auto vertex : members) {
      // children in one orbit of the known automorphisms fixing seq pointwise are equivalent
      for (; gens_seen < gens_.size(); ++gens_seen) {
        const auto& g = gens_[gens_seen];
        if (std::any_of(seq.begin(), seq.end(), [&](std::uint32_t s) { return g[s] != s; })) continue;
        for (std::uint32_t i = 0; i < n_; ++i) orbits.unite(i, g[i]);
      }
      const auto root = orbits.find(vertex);
      if (std::any_of(explored.begin(), explored.end(), [&](std::uint32_t e) { return orbits.find(e) == root; })) {
        continue;
      }
      explored.push_back(vertex);

      Partition child = p;
      individualize(child, vertex);
      const auto h = refine(child, {child.cell[vertex]});
      seq.push_back(vertex);
      trace.push_back(h);
      bool prune = false;
      if (have_first_) {
        const bool eq_first = compare_traces(trace, first_trace_, trace.size()) == 0 &&
                              first_trace_.size() >= trace.size();
        const int cmp_best = compare_traces(trace, best_trace_, trace.size());
        prune = !eq_first && cmp_best < 0;
      }
      std::size_t back = depth + 1;
      if (!prune) back = search(child, seq, trace);
      seq.pop_back();
      trace.pop_back();
      if (back < depth) return back;
    }
    return depth;
  }

  std::size_t v_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint8_t> cell_mark_;
  std::vector<std::uint8_t> in_queue_;
  std::size_t row_words_ = 0;

  Partition root_;
  std::uint64_t root_trace_ = 0;
  bool have_first_ = false;
  std::vector<std::uint32_t> first_seq_, best_seq_;
  std::vector<std::uint64_t> first_trace_, best_trace_;
  std::vector<std::uint32_t> first_lab_, best_lab_;
  std::vector<std::uint64_t> first_cert_, best_cert_;
  std::vector<Perm> gens_;
  std::size_t nodes_ = 0;
  std::size_t leaves_ = 0;
};

OrbitPartition orbits_of(std::size_t n, std::size_t offset, std::size_t count, const std::vector<Perm>& gens) {
  UnionFind uf(count);
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < count; ++i) {
      uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(g[offset + i] - offset));
    }
  }
  (void)n;
  std::map<std::uint32_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < count; ++i) groups[uf.find(static_cast<std::uint32_t>(i))].push_back(i);
  OrbitPartition out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

std::string CanonicalCert::hex() const {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : digest) {
    out += kDigits[c >> 4];
    out += kDigits[c & 15];
  }
  return out;
}

CanonicalForm canonical_form(const IncidenceStructure& d, IsoStats* stats) {
  IrSearch search(d);
  search.run();
  if (stats) {
    stats->nodes = search.nodes();
    stats->leaves = search.leaves();
  }
  CanonicalForm out;
  const auto& lab = search.best_lab();
  const std::size_t n = d.v() + d.b();
  out.labeling.assign(n, 0);
  for (std::size_t i = 0; i < lab.size(); ++i) out.labeling[lab[i]] = static_cast<std::uint32_t>(i);
  std::vector<Block> blocks(d.b());
  for (std::size_t j = 0; j < d.b(); ++j) {
    Block blk;
    for (auto x : d.block(j)) blk.push_back(out.labeling[x]);
    std::sort(blk.begin(), blk.end());
    blocks[out.labeling[d.v() + j] - d.v()] = std::move(blk);
  }
  out.canonical = IncidenceStructure(d.v(), std::move(blocks), d.name());
  out.cert.bytes = to_des(out.canonical);
  return out;
}

CanonicalCert canonical_cert(const IncidenceStructure& d) { return canonical_form(d).cert; }

bool are_isomorphic(const IncidenceStructure& a, const IncidenceStructure& b) {
  if (a.v() != b.v() || a.b() != b.b()) return false;
  return canonical_cert(a) == canonical_cert(b);
}

PermGroup automorphism_group(const IncidenceStructure& d, IsoStats* stats) {
  IrSearch search(d);
  search.run();
  if (stats) {
    stats->nodes = search.nodes();
    stats->leaves = search.leaves();
  }
  PermGroup g;
  g.points = d.v();
  g.blocks = d.b();
  g.generators = search.generators();
  g.order = StabilizerChain(g.degree(), g.generators).order();
  return g;
}

OrbitPartition point_orbits(const PermGroup& g) { return orbits_of(g.degree(), 0, g.points, g.generators); }

OrbitPartition block_orbits(const PermGroup& g) { return orbits_of(g.degree(), g.points, g.blocks, g.generators); }

OrbitPartition resolution_orbits(const PermGroup& g, const std::vector<Resolution>& resolutions) {
  auto normal = [](Resolution r) {
    for (auto& c : r.classes) std::sort(c.begin(), c.end());
    std::sort(r.classes.begin(), r.classes.end());
    return r.classes;
  };
  std::map<std::vector<std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t i = 0; i < resolutions.size(); ++i) index.emplace(normal(resolutions[i]), i);
  UnionFind uf(resolutions.size());
  for (const auto& gen : g.generators) {
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      Resolution img = resolutions[i];
      for (auto& c : img.classes) {
        for (auto& j : c) j = gen[g.points + j] - g.points;
      }
      const auto it = index.find(normal(img));
      if (it == index.end()) throw Error(ErrorCode::WrongParameters, "resolution list is not closed under the group");
      uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(it->second));
    }
  }
  std::map<std::uint32_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < resolutions.size(); ++i) groups[uf.find(static_cast<std::uint32_t>(i))].push_back(i);
  OrbitPartition out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  return out;
}

std::vector<std::size_t> orbit_sizes(const OrbitPartition& orbits) {
  std::vector<std::size_t> out;
  for (const auto& o : orbits) out.push_back(o.size());
  std::sort(out.begin(), out.end());
  return out;
}

IncidenceStructure apply(const IncidenceStructure& d, const Perm& g) {
  if (g.size() != d.v() + d.b()) throw Error(ErrorCode::BadDimension, "permutation degree mismatch");
  std::vector<Block> blocks(d.b());
  for (std::size_t j = 0; j < d.b(); ++j) {
    const auto target = g[d.v() + j];
    if (target < d.v()) throw Error(ErrorCode::WrongParameters, "permutation mixes points and blocks");
    Block blk;
    for (auto x : d.block(j)) {
      if (g[x] >= d.v()) throw Error(ErrorCode::WrongParameters, "permutation mixes points and blocks");
      blk.push_back(g[x]);
    }
    blocks[target - d.v()] = std::move(blk);
  }
  return IncidenceStructure(d.v(), std::move(blocks), d.name());
}

bool is_automorphism(const IncidenceStructure& d, const Perm& g) {
  try {
    return apply(d, g) == d;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace embedrank
