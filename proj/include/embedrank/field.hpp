#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace embedrank {

/// Polynomial over GF(p), coefficients constant-term first.
using Poly = std::vector<int>;

bool is_prime(long long n) noexcept;

/// Element of GF(p^t) in polynomial-basis coordinates.
struct FieldElement {
  std::vector<int> coeffs;
  std::uint64_t field_id = 0;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// Arithmetic context for GF(p^t). Elements are also addressable by a
/// compact integer code sum(c_i * p^i), which the geometry generators use
/// through the table-driven int overloads.
class Field {
 public:
  /// Throws NonPrimeModulus, ReduciblePolynomial or NoDefaultIrreducible.
  static Field make(int p, int t, std::optional<Poly> irreducible = std::nullopt);

  /// Default irreducible for GF(p^t) when q <= 32, else nullopt.
  static std::optional<Poly> default_irreducible(int p, int t);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return t_; }
  int order() const noexcept { return q_; }
  const Poly& irreducible() const noexcept { return irreducible_; }
  std::uint64_t id() const noexcept { return id_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::vector<int> coeffs) const;
  FieldElement from_code(int code) const;
  int code_of(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(const FieldElement& a, long long e) const;

  // Table-driven arithmetic on integer codes; requires has_tables().
  bool has_tables() const noexcept { return !mul_.empty(); }
  int add(int a, int b) const noexcept { return add_[static_cast<std::size_t>(a * q_ + b)]; }
  int sub(int a, int b) const noexcept { return add(a, neg_[static_cast<std::size_t>(b)]); }
  int neg(int a) const noexcept { return neg_[static_cast<std::size_t>(a)]; }
  int mul(int a, int b) const noexcept { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
  int inv(int a) const;

 private:
  Field() = default;
  void check(const FieldElement& a) const;
  std::vector<int> mul_coeffs(const std::vector<int>& a, const std::vector<int>& b) const;
  void build_tables();

  int p_ = 2;
  int t_ = 1;
  int q_ = 2;
  Poly irreducible_;
  std::uint64_t id_ = 0;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

}  // namespace embedrank
