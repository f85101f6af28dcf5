#include "embedrank/perm_group.hpp"

#include <numeric>
#include <set>

#include "embedrank/error.hpp"

namespace embedrank {

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

namespace {

std::uint32_t least_moved(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(p.size());
}

}  // namespace

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Perm>& generators) : degree_(degree) {
  for (const auto& g : generators) {
    if (g.size() != degree) throw Error(ErrorCode::BadDimension, "generator degree mismatch");
    if (!is_identity(g)) insert(g, 0);
  }
}

void StabilizerChain::add_level(std::uint32_t base_point) {
  Level lv;
  lv.base = base_point;
  lv.trans.assign(degree_, -1);
  lv.trans[base_point] = 0;
  lv.transversal.push_back(identity_perm(degree_));
  lv.orbit.push_back(base_point);
  levels_.push_back(std::move(lv));
  checked_.emplace_back();
  base_.push_back(base_point);
}

void StabilizerChain::add_to_level(std::size_t level, std::size_t gen) {
  auto& lv = levels_[level];
  lv.gens.push_back(gen);
  // extend the orbit breadth-first with all generators of this level
  for (std::size_t idx = 0; idx < lv.orbit.size(); ++idx) {
    const auto u = lv.orbit[idx];
    for (auto gi : lv.gens) {
      const auto& s = strong_[gi];
      const auto w = s[u];
      if (lv.trans[w] >= 0) continue;
      lv.trans[w] = static_cast<std::int64_t>(lv.transversal.size());
      lv.transversal.push_back(compose(s, lv.transversal[static_cast<std::size_t>(lv.trans[u])]));
      lv.orbit.push_back(w);
    }
  }
}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm g, std::size_t level) const {
  for (std::size_t j = level; j < levels_.size(); ++j) {
    const auto& lv = levels_[j];
    const auto x = g[lv.base];
    if (lv.trans[x] < 0) return {std::move(g), j};
    g = compose(inverse(lv.transversal[static_cast<std::size_t>(lv.trans[x])]), g);
  }
  return {std::move(g), levels_.size()};
}

void StabilizerChain::insert(const Perm& g, std::size_t from_level) {
  auto add_strong = [&](const Perm& h, std::size_t lo, std::size_t hi) {
    // h fixes the base points of levels < hi; hi may be a new level
    if (hi == levels_.size()) {
      add_level(least_moved(h));
    }
    strong_.push_back(h);
    for (std::size_t l = lo; l <= hi; ++l) add_to_level(l, strong_.size() - 1);
  };

  auto [h, j] = strip(g, from_level);
  if (is_identity(h)) return;
  add_strong(h, from_level, j);

  std::size_t i = levels_.size();
  while (i-- > from_level) {
    bool added = false;
    auto& lv = levels_[i];
    for (std::size_t oi = 0; oi < levels_[i].orbit.size() && !added; ++oi) {
      const auto u = levels_[i].orbit[oi];
      for (std::size_t gk = 0; gk < levels_[i].gens.size(); ++gk) {
        const auto gi = levels_[i].gens[gk];
        if (!checked_[i].emplace(u, gi).second) continue;
        const auto& s = strong_[gi];
        const auto& tu = lv.transversal[static_cast<std::size_t>(lv.trans[u])];
        const auto& tsu = lv.transversal[static_cast<std::size_t>(lv.trans[s[u]])];
        auto y = compose(inverse(tsu), compose(s, tu));
        auto [res, stop] = strip(std::move(y), i + 1);
        if (!is_identity(res)) {
          add_strong(res, i + 1, stop);
          i = stop + 1;  // resume at the level that just grew
          added = true;
          break;
        }
      }
    }
    if (added) continue;
  }
}

std::uint64_t StabilizerChain::order() const {
  unsigned __int128 o = 1;
  for (const auto& lv : levels_) {
    o *= lv.orbit.size();
    if (o > ~std::uint64_t{0}) throw Error(ErrorCode::TooLarge, "group order exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(o);
}

std::vector<std::size_t> StabilizerChain::basic_orbit_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.size() != degree_) return false;
  return is_identity(strip(g, 0).first);
}

}  // namespace embedrank
