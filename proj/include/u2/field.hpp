#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "u2/ratfunc.hpp"

namespace u2 {

enum class FieldKind { GF2k, RatFunc2 };

/// Identifies a coefficient field: GF(2)[t]/(modulus) or GF(2)(X, Y).
/// For GF2k, bit i of `modulus` is the coefficient of t^i and bit k is set.
struct FieldDescriptor {
  FieldKind kind = FieldKind::GF2k;
  int k = 1;
  std::uint64_t modulus = 0b11;

  /// Validates degree and irreducibility; throws ReducibleModulus / BadParameters.
  static FieldDescriptor gf2k(int k, std::uint64_t modulus);
  static FieldDescriptor gf2() { return {FieldKind::GF2k, 1, 0b11}; }
  static FieldDescriptor ratfunc2() { return {FieldKind::RatFunc2, 0, 0}; }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
  std::string to_string() const;
};

bool is_irreducible_gf2(std::uint64_t poly);
/// Smallest irreducible polynomial of the given degree, in integer order of the bit encoding.
std::uint64_t smallest_irreducible(int degree);

/// Immutable field element. GF2k values live in `bits`; rational functions
/// are shared immutable heap values. Zero is the same representation in
/// both backends.
class Scalar {
 public:
  Scalar() = default;
  static Scalar from_bits(std::uint64_t bits) {
    Scalar s;
    s.bits_ = bits;
    return s;
  }
  static Scalar from_rat(RationalFunction r);

  bool is_zero() const { return bits_ == 0 && !rat_; }
  std::uint64_t bits() const { return bits_; }
  const RationalFunction* rat() const { return rat_.get(); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.bits_ != b.bits_) return false;
    if (a.rat_ == b.rat_) return true;
    if (!a.rat_ || !b.rat_) return false;
    return *a.rat_ == *b.rat_;
  }

 private:
  std::uint64_t bits_ = 0;
  std::shared_ptr<const RationalFunction> rat_;
};

/// Arithmetic context for one coefficient field.
class Field {
 public:
  Field() = default;
  explicit Field(FieldDescriptor d) : desc_(d) {}
  static Field gf2() { return Field(FieldDescriptor::gf2()); }
  static Field gf2k(int k, std::uint64_t modulus) { return Field(FieldDescriptor::gf2k(k, modulus)); }
  static Field ratfunc2() { return Field(FieldDescriptor::ratfunc2()); }

  const FieldDescriptor& descriptor() const { return desc_; }
  FieldKind kind() const { return desc_.kind; }
  bool is_finite() const { return desc_.kind == FieldKind::GF2k; }
  int degree() const { return desc_.k; }
  /// Number of elements; only for GF2k with k < 63.
  std::uint64_t order() const;

  Scalar zero() const { return {}; }
  Scalar one() const;
  Scalar generator() const;  // t for GF2k, X for RatFunc2
  Scalar from_rat(const RationalFunction& r) const;
  Scalar from_bits(std::uint64_t bits) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar square(const Scalar& a) const { return mul(a, a); }
  Scalar pow(Scalar a, std::uint64_t e) const;
  std::optional<Scalar> sqrt(const Scalar& a) const;
  /// Throws NoSquareRoot when no root exists.
  Scalar sqrt_or_throw(const Scalar& a) const;

  /// All elements in bit order; GF2k only, k <= 20.
  std::vector<Scalar> elements() const;
  /// Uniform element for GF2k; small random polynomial fraction for RatFunc2.
  Scalar random(std::mt19937_64& rng) const;

  std::string format(const Scalar& a) const;
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b) { return a.desc_ == b.desc_; }

 private:
  std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b) const;
  FieldDescriptor desc_;
};

/// Injective ring homomorphism between two fields.
class Embedding {
 public:
  Embedding() = default;
  Embedding(Field source, Field target, std::function<Scalar(const Scalar&)> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

  static Embedding identity(const Field& f);

  const Field& source() const { return source_; }
  const Field& target() const { return target_; }
  Scalar operator()(const Scalar& a) const { return map_(a); }

 private:
  Field source_;
  Field target_;
  std::function<Scalar(const Scalar&)> map_;
};

/// GF(2^k) -> GF(2^(k*m)) for a supplied irreducible modulus of degree k*m.
Embedding extend(const Field& base, int multiplier, std::uint64_t big_modulus);
/// GF(2^k) -> GF(2^(k*m)) with the smallest irreducible modulus of degree k*m.
Embedding extend(const Field& base, int multiplier);
/// F2(X,Y) -> F2(X^,Y^) with X -> X^^2, Y -> Y^^2, so images of X and Y acquire square roots.
Embedding adjoin_square_roots(const Field& ratfunc);

}  // namespace u2
