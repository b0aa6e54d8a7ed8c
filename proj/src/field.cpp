#include "u2/field.hpp"

#include <bit>
#include <cctype>
#include <sstream>

#include "u2/error.hpp"

namespace u2 {

namespace {

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

bool is_irreducible_gf2(std::uint64_t poly) {
  const int k = poly_degree(poly);
  if (k < 1) return false;
  if (k == 1) return true;
  for (int d = 1; d <= k / 2; ++d) {
    for (std::uint64_t q = std::uint64_t{1} << d; q < (std::uint64_t{1} << (d + 1)); ++q) {
      if (poly_mod(poly, q) == 0) return false;
    }
  }
  return true;
}

std::uint64_t smallest_irreducible(int degree) {
  if (degree < 1 || degree > 32) throw Error(ErrorCode::BadParameters, "irreducible degree out of range 1..32");
  for (std::uint64_t p = std::uint64_t{1} << degree; p < (std::uint64_t{1} << (degree + 1)); ++p) {
    if (is_irreducible_gf2(p)) return p;
  }
  throw Error(ErrorCode::BadParameters, "no irreducible polynomial found");
}

FieldDescriptor FieldDescriptor::gf2k(int k, std::uint64_t modulus) {
  if (k < 1 || k > 32) throw Error(ErrorCode::BadParameters, "GF(2^k) requires 1 <= k <= 32");
  if (poly_degree(modulus) != k) throw Error(ErrorCode::BadParameters, "modulus degree does not match k");
  if (!is_irreducible_gf2(modulus)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over GF(2)");
  return {FieldKind::GF2k, k, modulus};
}

std::string FieldDescriptor::to_string() const {
  if (kind == FieldKind::RatFunc2) return "F2(X,Y)";
  std::ostringstream os;
  os << "GF(2^" << k << ")[mod 0x" << std::hex << modulus << "]";
  return os.str();
}

Scalar Scalar::from_rat(RationalFunction r) {
  Scalar s;
  if (!r.is_zero()) s.rat_ = std::make_shared<const RationalFunction>(std::move(r));
  return s;
}

std::uint64_t Field::order() const {
  if (!is_finite() || desc_.k >= 63) throw Error(ErrorCode::UnsupportedField, "order of an infinite field");
  return std::uint64_t{1} << desc_.k;
}

Scalar Field::one() const {
  if (is_finite()) return Scalar::from_bits(1);
  return Scalar::from_rat(RationalFunction(BiPoly::one()));
}

Scalar Field::generator() const {
  if (is_finite()) return from_bits(desc_.k == 1 ? 1 : 2);
  return Scalar::from_rat(RationalFunction(BiPoly::x()));
}

Scalar Field::from_rat(const RationalFunction& r) const {
  if (is_finite()) throw Error(ErrorCode::FieldMismatch, "rational function in a finite field");
  return Scalar::from_rat(r);
}

Scalar Field::from_bits(std::uint64_t bits) const {
  if (!is_finite()) {
    if (bits > 1) throw Error(ErrorCode::FieldMismatch, "bit scalar in F2(X,Y)");
    return bits ? one() : zero();
  }
  return Scalar::from_bits(poly_mod(bits, desc_.modulus));
}

std::uint64_t Field::mul_bits(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> desc_.k) & 1u) a ^= desc_.modulus;
  }
  return r;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_finite()) return Scalar::from_bits(a.bits() ^ b.bits());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Scalar::from_rat(*a.rat() + *b.rat());
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_finite()) return Scalar::from_bits(mul_bits(a.bits(), b.bits()));
  if (a.is_zero() || b.is_zero()) return {};
  if (a.rat()->is_one()) return b;
  if (b.rat()->is_one()) return a;
  return Scalar::from_rat(*a.rat() * *b.rat());
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  Scalar r = one();
  while (e != 0) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Scalar Field::inv(const Scalar& a) const {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_finite()) {
    // a^(2^k - 2)
    Scalar r = one();
    Scalar s = a;
    for (int i = 1; i < desc_.k; ++i) {
      s = mul(s, s);
      r = mul(r, s);
    }
    return r;
  }
  return Scalar::from_rat(a.rat()->inverse());
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

std::optional<Scalar> Field::sqrt(const Scalar& a) const {
  if (is_finite()) {
    // Frobenius has order k, so a^(2^(k-1)) squares to a.
    Scalar r = a;
    for (int i = 1; i < desc_.k; ++i) r = mul(r, r);
    return r;
  }
  if (a.is_zero()) return zero();
  if (!a.rat()->is_square()) return std::nullopt;
  return Scalar::from_rat(a.rat()->sqrt());
}

Scalar Field::sqrt_or_throw(const Scalar& a) const {
  auto r = sqrt(a);
  if (!r) throw Error(ErrorCode::NoSquareRoot, format(a) + " has no square root in " + desc_.to_string());
  return *r;
}

std::vector<Scalar> Field::elements() const {
  if (!is_finite() || desc_.k > 20) throw Error(ErrorCode::UnsupportedField, "element enumeration");
  std::vector<Scalar> out;
  out.reserve(order());
  for (std::uint64_t b = 0; b < order(); ++b) out.push_back(Scalar::from_bits(b));
  return out;
}

Scalar Field::random(std::mt19937_64& rng) const {
  if (is_finite()) {
    const std::uint64_t mask = desc_.k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << desc_.k) - 1;
    return Scalar::from_bits(rng() & mask);
  }
  auto small = [&rng] {
    BiPoly p;
    const auto bits = rng();
    for (int dx = 0; dx < 3; ++dx)
      for (int dy = 0; dy < 3; ++dy)
        if ((bits >> (3 * dx + dy)) & 1u) p += BiPoly::monomial(dx, dy);
    return p;
  };
  BiPoly num = small();
  BiPoly den = small();
  if (den.is_zero()) den = BiPoly::one();
  return Scalar::from_rat(RationalFunction(num, den));
}

std::string Field::format(const Scalar& a) const {
  if (is_finite()) {
    std::ostringstream os;
    os << std::hex << a.bits();
    return os.str();
  }
  if (a.is_zero()) return "0";
  return a.rat()->to_string();
}

Scalar Field::parse(std::string_view text) const {
  if (is_finite()) {
    if (text.empty() || text.size() > 16) throw Error(ErrorCode::SyntaxError, "bad GF(2^k) scalar '" + std::string(text) + "'");
    std::uint64_t v = 0;
    for (char c : text) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else throw Error(ErrorCode::SyntaxError, "bad hex digit in scalar '" + std::string(text) + "'");
      v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    if (poly_degree(v) >= desc_.k) throw Error(ErrorCode::SyntaxError, "scalar '" + std::string(text) + "' exceeds field degree");
    return Scalar::from_bits(v);
  }
  return Scalar::from_rat(RationalFunction::parse(text));
}

Embedding Embedding::identity(const Field& f) {
  return Embedding(f, f, [](const Scalar& a) { return a; });
}

Embedding extend(const Field& base, int multiplier, std::uint64_t big_modulus) {
  if (!base.is_finite()) throw Error(ErrorCode::UnsupportedField, "degree extension of F2(X,Y)");
  if (multiplier < 1) throw Error(ErrorCode::BadParameters, "extension multiplier must be >= 1");
  const int k = base.degree();
  const int big_k = k * multiplier;
  Field big = Field::gf2k(big_k, big_modulus);
  if (multiplier == 1 && big_modulus == base.descriptor().modulus) return Embedding::identity(base);

  // Find a root r of the base modulus in the big field; t -> r is the embedding.
  Scalar root;
  if (k == 1) {
    root = big.one();
  } else {
    const std::uint64_t big_order_m1 = (big_k >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << big_k) - 1;
    const std::uint64_t small_order_m1 = (std::uint64_t{1} << k) - 1;
    const std::uint64_t cofactor = big_order_m1 / small_order_m1;
    auto eval_modulus = [&](const Scalar& x) {
      Scalar acc = big.zero();
      for (int i = k; i >= 0; --i) {
        acc = big.mul(acc, x);
        if ((base.descriptor().modulus >> i) & 1u) acc = big.add(acc, big.one());
      }
      return acc;
    };
    std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(big_k));
    bool found = false;
    for (int attempt = 0; attempt < 256 && !found; ++attempt) {
      Scalar a = big.random(rng);
      if (a.is_zero()) continue;
      const Scalar zeta = big.pow(a, cofactor);
      Scalar x = zeta;
      for (std::uint64_t i = 0; i < small_order_m1; ++i) {
        if (eval_modulus(x).is_zero()) {
          root = x;
          found = true;
          break;
        }
        x = big.mul(x, zeta);
        if (x == zeta) break;
      }
    }
    if (!found) throw Error(ErrorCode::ReducibleModulus, "no root of the base modulus in the extension");
  }
  std::vector<Scalar> powers;
  Scalar p = big.one();
  for (int i = 0; i < k; ++i) {
    powers.push_back(p);
    p = big.mul(p, root);
  }
  return Embedding(base, big, [big, powers](const Scalar& a) {
    Scalar r = big.zero();
    for (std::size_t i = 0; i < powers.size(); ++i)
      if ((a.bits() >> i) & 1u) r = big.add(r, powers[i]);
    return r;
  });
}

Embedding extend(const Field& base, int multiplier) {
  return extend(base, multiplier, smallest_irreducible(base.degree() * multiplier));
}

Embedding adjoin_square_roots(const Field& ratfunc) {
  if (ratfunc.is_finite()) throw Error(ErrorCode::UnsupportedField, "square-root adjunction expects F2(X,Y)");
  return Embedding(ratfunc, ratfunc, [](const Scalar& a) {
    if (a.is_zero()) return a;
    return Scalar::from_rat(a.rat()->frobenius_substitute());
  });
}

}  // namespace u2
