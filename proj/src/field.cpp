#include "embedrank/field.hpp"

#include <string>

#include "embedrank/error.hpp"

namespace embedrank {
namespace {

int mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
  // p is prime: a^(p-2)
  long long result = 1;
  long long base = mod(a, p);
  int e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(result);
}

void strip(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of f modulo monic-or-not g over GF(p); g must be nonzero.
Poly poly_rem(Poly f, const Poly& g, int p) {
  strip(f);
  const int dg = static_cast<int>(g.size()) - 1;
  const int lead_inv = inv_mod(g.back(), p);
  while (static_cast<int>(f.size()) - 1 >= dg && !f.empty()) {
    const int shift = static_cast<int>(f.size()) - 1 - dg;
    const int factor = static_cast<int>(static_cast<long long>(f.back()) * lead_inv % p);
    for (int i = 0; i <= dg; ++i) {
      auto& c = f[static_cast<std::size_t>(i + shift)];
      c = mod(c - static_cast<long long>(factor) * g[static_cast<std::size_t>(i)], p);
    }
    strip(f);
  }
  return f;
}

bool irreducible_over(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      Poly g(static_cast<std::size_t>(d + 1), 0);
      long long x = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<int>(x % p);
        x /= p;
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::uint64_t fnv(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffU;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

bool is_prime(long long n) noexcept {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<Poly> Field::default_irreducible(int p, int t) {
  if (t == 1) return Poly{0, 1};
  if (p == 2 && t == 2) return Poly{1, 1, 1};
  if (p == 2 && t == 3) return Poly{1, 1, 0, 1};
  if (p == 2 && t == 4) return Poly{1, 1, 0, 0, 1};
  if (p == 2 && t == 5) return Poly{1, 0, 1, 0, 0, 1};
  if (p == 3 && t == 2) return Poly{1, 0, 1};
  if (p == 3 && t == 3) return Poly{1, 2, 0, 1};
  if (p == 5 && t == 2) return Poly{1, 1, 1};
  return std::nullopt;
}

Field Field::make(int p, int t, std::optional<Poly> irreducible) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, "modulus " + std::to_string(p) + " is not prime");
  if (p >= 256) throw Error(ErrorCode::NonPrimeModulus, "characteristic must be below 256");
  if (t < 1) throw Error(ErrorCode::BadDimension, "extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < t; ++i) {
    q *= p;
    if (q > (1LL << 30)) throw Error(ErrorCode::TooLarge, "field too large");
  }
  Poly f;
  if (irreducible) {
    f = *irreducible;
    for (auto& c : f) c = mod(c, p);
    strip(f);
    if (static_cast<int>(f.size()) != t + 1 || f.back() != 1) {
      throw Error(ErrorCode::ReduciblePolynomial, "irreducible must be monic of degree " + std::to_string(t));
    }
    if (!irreducible_over(f, p)) throw Error(ErrorCode::ReduciblePolynomial, "polynomial is reducible");
  } else {
    auto d = default_irreducible(p, t);
    if (!d) {
      throw Error(ErrorCode::NoDefaultIrreducible,
                  "no default irreducible for GF(" + std::to_string(p) + "^" + std::to_string(t) + ")");
    }
    f = *d;
  }
  Field field;
  field.p_ = p;
  field.t_ = t;
  field.q_ = static_cast<int>(q);
  field.irreducible_ = f;
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv(h, static_cast<std::uint64_t>(p));
  h = fnv(h, static_cast<std::uint64_t>(t));
  for (int c : f) h = fnv(h, static_cast<std::uint64_t>(c));
  field.id_ = h;
  if (q <= 256) field.build_tables();
  return field;
}

std::vector<int> Field::mul_coeffs(const std::vector<int>& a, const std::vector<int>& b) const {
  Poly prod(static_cast<std::size_t>(2 * t_), 0);
  for (int i = 0; i < t_; ++i) {
    for (int j = 0; j < t_; ++j) {
      auto& c = prod[static_cast<std::size_t>(i + j)];
      c = mod(c + static_cast<long long>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)], p_);
    }
  }
  Poly r = t_ == 1 ? prod : poly_rem(prod, irreducible_, p_);
  r.resize(static_cast<std::size_t>(t_), 0);
  return r;
}

void Field::check(const FieldElement& a) const {
  if (a.field_id != id_ || static_cast<int>(a.coeffs.size()) != t_) {
    throw Error(ErrorCode::SpecMismatch, "element does not belong to this field");
  }
}

FieldElement Field::zero() const { return FieldElement{std::vector<int>(static_cast<std::size_t>(t_), 0), id_}; }

FieldElement Field::one() const {
  auto e = zero();
  e.coeffs[0] = 1;
  return e;
}

FieldElement Field::element(std::vector<int> coeffs) const {
  if (static_cast<int>(coeffs.size()) > t_) throw Error(ErrorCode::SpecMismatch, "too many coefficients");
  coeffs.resize(static_cast<std::size_t>(t_), 0);
  for (auto& c : coeffs) c = mod(c, p_);
  return FieldElement{std::move(coeffs), id_};
}

FieldElement Field::from_code(int code) const {
  if (code < 0 || code >= q_) throw Error(ErrorCode::SpecMismatch, "element code out of range");
  std::vector<int> c(static_cast<std::size_t>(t_));
  for (auto& x : c) {
    x = code % p_;
    code /= p_;
  }
  return FieldElement{std::move(c), id_};
}

int Field::code_of(const FieldElement& a) const {
  check(a);
  int code = 0;
  for (int i = t_ - 1; i >= 0; --i) code = code * p_ + a.coeffs[static_cast<std::size_t>(i)];
  return code;
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = mod(a.coeffs[i] + b.coeffs[i], p_);
  return r;
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  return FieldElement{mul_coeffs(a.coeffs, b.coeffs), id_};
}

FieldElement Field::pow(const FieldElement& a, long long e) const {
  check(a);
  if (e < 0) return pow(inv(a), -e);
  FieldElement result = one();
  FieldElement base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElement Field::inv(const FieldElement& a) const {
  check(a);
  if (a == zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  // a^(q-2) in the multiplicative group of order q-1
  return pow(a, static_cast<long long>(q_) - 2);
}

int Field::inv(int a) const {
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  return inv_[static_cast<std::size_t>(a)];
}

void Field::build_tables() {
  const auto q = static_cast<std::size_t>(q_);
  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  std::vector<FieldElement> elems;
  elems.reserve(q);
  for (int c = 0; c < q_; ++c) elems.push_back(from_code(c));
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      add_[a * q + b] = code_of(add(elems[a], elems[b]));
      mul_[a * q + b] = code_of(mul(elems[a], elems[b]));
    }
  }
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      if (add_[a * q + b] == 0) neg_[a] = static_cast<int>(b);
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<int>(b);
    }
  }
}

}  // namespace embedrank
