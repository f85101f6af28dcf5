#include "embedrank/geometry.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "embedrank/error.hpp"

namespace embedrank {
namespace {

using Vec = std::vector<int>;

/// Calls f with the rows of every k x n reduced row echelon matrix of rank k
/// over the field, ordered by pivot set then by free entries.
template <class F>
void for_each_subspace(const Field& field, std::size_t n, std::size_t k, F&& f) {
  const int q = field.order();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = piv[i] + 1; j < n; ++j) {
        if (!is_pivot[j]) free.emplace_back(i, j);
      }
    }
    std::vector<int> digits(free.size(), 0);
    while (true) {
      std::vector<Vec> rows(k, Vec(n, 0));
      for (std::size_t i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t e = 0; e < free.size(); ++e) rows[free[e].first][free[e].second] = digits[e];
      f(rows);
      std::size_t e = free.size();
      while (e > 0 && digits[e - 1] == q - 1) digits[--e] = 0;
      if (e == 0) break;
      ++digits[e - 1];
    }
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

/// All q^k linear combinations of the rows.
std::vector<Vec> span(const Field& field, const std::vector<Vec>& rows, std::size_t n) {
  std::vector<Vec> out{Vec(n, 0)};
  for (const auto& r : rows) {
    const std::size_t base = out.size();
    for (int c = 1; c < field.order(); ++c) {
      for (std::size_t i = 0; i < base; ++i) {
        Vec w = out[i];
        for (std::size_t j = 0; j < n; ++j) w[j] = field.add(w[j], field.mul(c, r[j]));
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

std::size_t encode(const Vec& x, int q) {
  std::size_t idx = 0;
  for (int c : x) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(c);
  return idx;
}

Vec decode(std::size_t idx, std::size_t n, int q) {
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    x[i] = static_cast<int>(idx % static_cast<std::size_t>(q));
    idx /= static_cast<std::size_t>(q);
  }
  return x;
}

}  // namespace

Field field_for_order(std::size_t q) {
  if (q < 2) throw Error(ErrorCode::NoField, "field order must be at least 2");
  std::size_t p = 2;
  while (q % p != 0) ++p;
  std::size_t t = 0;
  std::size_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++t;
  }
  if (rest != 1) throw Error(ErrorCode::NoField, std::to_string(q) + " is not a prime power");
  try {
    auto f = Field::make(static_cast<int>(p), static_cast<int>(t));
    if (!f.has_tables()) throw Error(ErrorCode::NoField, "field too large for geometry generation");
    return f;
  } catch (const Error& e) {
    throw Error(ErrorCode::NoField, e.what());
  }
}

AffineGeometry ag_design(std::size_t n, std::size_t q, std::size_t d) {
  if (d < 1 || d + 1 > n) throw Error(ErrorCode::BadDimension, "need 1 <= d <= n-1");
  const Field field = field_for_order(q);
  const int qi = field.order();
  std::size_t v = 1;
  for (std::size_t i = 0; i < n; ++i) v *= q;

  std::vector<Vec> coords(v);
  for (std::size_t x = 0; x < v; ++x) coords[x] = decode(x, n, qi);

  AffineGeometry out;
  std::vector<Block> blocks;
  out.classical.class_size = v / [&] {
    std::size_t k = 1;
    for (std::size_t i = 0; i < d; ++i) k *= q;
    return k;
  }();
  for_each_subspace(field, n, d, [&](const std::vector<Vec>& rows) {
    const auto sub = span(field, rows, n);
    std::vector<bool> assigned(v, false);
    std::vector<std::size_t> cls;
    for (std::size_t x = 0; x < v; ++x) {
      if (assigned[x]) continue;
      Block blk;
      blk.reserve(sub.size());
      for (const auto& u : sub) {
        Vec y = coords[x];
        for (std::size_t j = 0; j < n; ++j) y[j] = field.add(y[j], u[j]);
        const auto idx = encode(y, qi);
        assigned[idx] = true;
        blk.push_back(static_cast<std::uint32_t>(idx));
      }
      std::sort(blk.begin(), blk.end());
      cls.push_back(blocks.size());
      blocks.push_back(std::move(blk));
    }
    out.classical.classes.push_back(std::move(cls));
  });
  out.design = IncidenceStructure(v, std::move(blocks),
                                  "AG" + std::to_string(d) + "(" + std::to_string(n) + "," + std::to_string(q) + ")");
  return out;
}

IncidenceStructure pg_design(std::size_t n, std::size_t q, std::size_t d) {
  if (d < 1 || d + 1 > n) throw Error(ErrorCode::BadDimension, "need 1 <= d <= n-1");
  const Field field = field_for_order(q);
  const int qi = field.order();
  const std::size_t dim = n + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= q;

  // Normalized representatives (first nonzero coordinate 1) in lexicographic order.
  std::vector<std::int64_t> point_of(total, -1);
  std::size_t v = 0;
  for (std::size_t code = 1; code < total; ++code) {
    const auto x = decode(code, dim, qi);
    const auto lead = std::find_if(x.begin(), x.end(), [](int c) { return c != 0; });
    if (*lead == 1) point_of[code] = static_cast<std::int64_t>(v++);
  }
  auto normalize = [&](Vec x) {
    const auto lead = std::find_if(x.begin(), x.end(), [](int c) { return c != 0; });
    const int s = field.inv(*lead);
    for (auto& c : x) c = field.mul(c, s);
    return x;
  };

  std::vector<Block> blocks;
  for_each_subspace(field, dim, d + 1, [&](const std::vector<Vec>& rows) {
    Block blk;
    for (const auto& u : span(field, rows, dim)) {
      if (std::all_of(u.begin(), u.end(), [](int c) { return c == 0; })) continue;
      const auto idx = point_of[encode(normalize(u), qi)];
      blk.push_back(static_cast<std::uint32_t>(idx));
    }
    std::sort(blk.begin(), blk.end());
    blk.erase(std::unique(blk.begin(), blk.end()), blk.end());
    blocks.push_back(std::move(blk));
  });
  return IncidenceStructure(v, std::move(blocks),
                            "PG" + std::to_string(d) + "(" + std::to_string(n) + "," + std::to_string(q) + ")");
}

}  // namespace embedrank
