#include "embedrank/resolve.hpp"

#include <string>

#include "embedrank/error.hpp"
#include "embedrank/parallel.hpp"

namespace embedrank {
namespace {

std::size_t class_count_for(const IncidenceStructure& d) {
  const auto k = d.block_size();
  if (!k) throw Error(ErrorCode::NonUniformBlockSize, "blocks must all have the same size");
  if (*k == 0 || d.v() % *k != 0) {
    throw Error(ErrorCode::NonUniformBlockSize, "block size must divide the number of points");
  }
  return d.v() / *k;
}

void extend_class(const std::vector<BitVec>& bits, std::size_t need, ParallelClass& current, BitVec& used,
                  std::vector<ParallelClass>& out) {
  if (current.size() == need) {
    out.push_back(current);
    return;
  }
  for (std::size_t j = current.back() + 1; j < bits.size(); ++j) {
    if (bits.size() - j < need - current.size()) break;
    if (used.intersects(bits[j])) continue;
    current.push_back(j);
    used ^= bits[j];
    extend_class(bits, need, current, used, out);
    used ^= bits[j];
    current.pop_back();
  }
}

std::vector<ParallelClass> classes_from(const std::vector<BitVec>& bits, std::size_t need, std::size_t first) {
  std::vector<ParallelClass> out;
  ParallelClass current{first};
  BitVec used = bits[first];
  extend_class(bits, need, current, used, out);
  return out;
}

struct CoverSearch {
  const std::vector<BitVec>* class_bits;
  const std::vector<std::vector<std::size_t>>* classes_with_block;
  const std::vector<ParallelClass>* classes;
  std::size_t blocks;
  std::size_t cap;
  std::vector<std::size_t> chosen;
  std::vector<Resolution> found;
  bool overflow = false;

  void run(BitVec& covered) {
    if (overflow) return;
    const std::size_t lowest = [&] {
      for (std::size_t j = 0; j < blocks; ++j) {
        if (!covered.test(j)) return j;
      }
      return blocks;
    }();
    if (lowest == blocks) {
      if (found.size() >= cap) {
        overflow = true;
        return;
      }
      Resolution r;
      for (auto c : chosen) r.classes.push_back((*classes)[c]);
      r.class_size = r.classes.empty() ? 0 : r.classes.front().size();
      found.push_back(std::move(r));
      return;
    }
    for (auto c : (*classes_with_block)[lowest]) {
      const auto& cb = (*class_bits)[c];
      if (covered.intersects(cb)) continue;
      covered ^= cb;
      chosen.push_back(c);
      run(covered);
      chosen.pop_back();
      covered ^= cb;
      if (overflow) return;
    }
  }
};

}  // namespace

std::vector<ParallelClass> parallel_classes_serial(const IncidenceStructure& d) {
  const std::size_t need = class_count_for(d);
  const auto bits = d.block_bits();
  std::vector<ParallelClass> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    auto part = classes_from(bits, need, i);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<ParallelClass> parallel_classes(const IncidenceStructure& d, int workers) {
  const std::size_t need = class_count_for(d);
  const auto bits = d.block_bits();
  std::vector<std::vector<ParallelClass>> parts(bits.size());
  const auto n = static_cast<std::int64_t>(bits.size());
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < n; ++i) {
    parts[static_cast<std::size_t>(i)] = classes_from(bits, need, static_cast<std::size_t>(i));
  }
  std::vector<ParallelClass> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<Resolution> resolutions_from_classes(const IncidenceStructure& d,
                                                 const std::vector<ParallelClass>& classes,
                                                 std::optional<std::size_t> limit, int workers) {
  const std::size_t blocks = d.b();
  std::vector<BitVec> class_bits;
  std::vector<std::vector<std::size_t>> with_block(blocks);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    BitVec bits(blocks);
    for (auto j : classes[c]) {
      bits.set(j);
      with_block[j].push_back(c);
    }
    class_bits.push_back(std::move(bits));
  }
  if (blocks == 0) return {Resolution{}};
  const std::size_t cap = limit.value_or(static_cast<std::size_t>(-1));

  // Top-level branches: the classes containing block 0. Each is an
  // independent subtree; results are concatenated in branch order.
  const auto& top = with_block[0];
  std::vector<CoverSearch> searches(top.size());
  const auto n = static_cast<std::int64_t>(top.size());
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < n; ++i) {
    auto& s = searches[static_cast<std::size_t>(i)];
    s.class_bits = &class_bits;
    s.classes_with_block = &with_block;
    s.classes = &classes;
    s.blocks = blocks;
    s.cap = cap;
    const auto c = top[static_cast<std::size_t>(i)];
    BitVec covered = class_bits[c];
    s.chosen.push_back(c);
    s.run(covered);
  }
  std::vector<Resolution> out;
  for (auto& s : searches) {
    if (s.overflow || out.size() + s.found.size() > cap) {
      throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " resolutions");
    }
    for (auto& r : s.found) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Resolution> resolutions(const IncidenceStructure& d, std::optional<std::size_t> limit, int workers) {
  return resolutions_from_classes(d, parallel_classes(d, workers), limit, workers);
}

std::vector<Resolution> resolutions_serial(const IncidenceStructure& d, std::optional<std::size_t> limit) {
  const auto classes = parallel_classes_serial(d);
  return resolutions_from_classes(d, classes, limit, 1);
}

}  // namespace embedrank
