#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "u2/error.hpp"
#include "u2/field.hpp"
#include "u2/poly2.hpp"
#include "u2/ratfunc.hpp"

using namespace u2;
using u2::test::gf16;
using u2::test::gf4;

namespace {

/// Schoolbook carry-less product reduced bit by bit; independent of Field::mul.
std::uint64_t naive_mul(std::uint64_t a, std::uint64_t b, int k, std::uint64_t modulus) {
  unsigned __int128 p = 0;
  for (int i = 0; i < 64; ++i)
    if ((b >> i) & 1u) p ^= static_cast<unsigned __int128>(a) << i;
  for (int d = 127; d >= k; --d)
    if ((p >> d) & 1u) p ^= static_cast<unsigned __int128>(modulus) << (d - k);
  return static_cast<std::uint64_t>(p);
}

}  // namespace

TEST_SUITE("scalar") {
  TEST_CASE("gf4 multiplication table and square roots") {
    const Field f = gf4();
    const Scalar t = f.generator();
    CHECK(f.mul(t, t) == f.from_bits(0b11));
    CHECK(f.sqrt_or_throw(t) == f.from_bits(0b11));
    CHECK(f.add(t, t).is_zero());
    CHECK(f.inv(t) == f.from_bits(0b11));
    CHECK(f.order() == 4);
    CHECK(f.elements().size() == 4);
  }

  TEST_CASE("reducible modulus is rejected") {
    CHECK_THROWS_AS(FieldDescriptor::gf2k(2, 0b101), Error);
    try {
      FieldDescriptor::gf2k(2, 0b101);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ReducibleModulus);
    }
    CHECK(is_irreducible_gf2(0b10011));
    CHECK_FALSE(is_irreducible_gf2(0b10001));
    CHECK(smallest_irreducible(4) == 0b10011);
  }

  TEST_CASE("field axioms against a naive product") {
    std::mt19937_64 rng(11);
    for (const Field& f : {gf4(), gf16(), Field::gf2k(13, smallest_irreducible(13))}) {
      const auto& d = f.descriptor();
      for (int trial = 0; trial < 200; ++trial) {
        const Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
        CHECK(f.mul(a, b).bits() == naive_mul(a.bits(), b.bits(), d.k, d.modulus));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        CHECK(f.add(a, a).is_zero());
        if (!a.is_zero()) CHECK(f.mul(a, f.inv(a)) == f.one());
        CHECK(f.sqrt_or_throw(f.square(a)) == a);
      }
    }
  }

  TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(gf4().inv(Scalar{}), Error);
    CHECK_THROWS_AS(Field::ratfunc2().inv(Scalar{}), Error);
  }

  TEST_CASE("ratfunc2 square roots") {
    const Field f = Field::ratfunc2();
    const Scalar x = f.generator();
    CHECK_FALSE(f.sqrt(x).has_value());
    try {
      f.sqrt_or_throw(x);
      FAIL("expected NoSquareRoot");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoSquareRoot);
    }
    const Scalar r = f.parse("(X^2+Y^2)/(X^4)");
    CHECK(f.sqrt_or_throw(r) == f.parse("(X+Y)/(X^2)"));
  }

  TEST_CASE("ratfunc2 normal form and round trip") {
    const Field f = Field::ratfunc2();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      const Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
      CHECK(f.parse(f.format(a)) == a);
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      if (!a.is_zero()) CHECK(f.div(a, a) == f.one());
    }
    CHECK(f.parse("(X^2+X)/(X)") == f.parse("X+1"));
  }

  TEST_CASE("squares of X and Y stay independent over the square subfield") {
    const Field f = Field::ratfunc2();
    const Scalar x = f.generator(), y = f.parse("Y");
    std::mt19937_64 rng(17);
    int tested = 0;
    while (tested < 100) {
      const Scalar l1 = f.random(rng), l2 = f.random(rng), l3 = f.random(rng);
      if (l1.is_zero() && l2.is_zero() && l3.is_zero()) continue;
      const Scalar s = f.add(f.square(l1), f.add(f.mul(f.square(l2), x), f.mul(f.square(l3), y)));
      CHECK_FALSE(s.is_zero());
      ++tested;
    }
  }

  TEST_CASE("embeddings are ring homomorphisms") {
    std::mt19937_64 rng(3);
    const Field base = gf4();
    const Embedding e = extend(base, 2);
    CHECK(e.target().degree() == 4);
    CHECK(e(base.one()) == e.target().one());
    for (int trial = 0; trial < 20; ++trial) {
      const Scalar a = base.random(rng), b = base.random(rng);
      CHECK(e(base.add(a, b)) == e.target().add(e(a), e(b)));
      CHECK(e(base.mul(a, b)) == e.target().mul(e(a), e(b)));
    }
    const Field rf = Field::ratfunc2();
    const Embedding s = adjoin_square_roots(rf);
    CHECK(s.target().sqrt(s(rf.generator())).has_value());
    for (int trial = 0; trial < 20; ++trial) {
      const Scalar a = rf.random(rng), b = rf.random(rng);
      CHECK(s(rf.mul(a, b)) == rf.mul(s(a), s(b)));
      CHECK(s(rf.add(a, b)) == rf.add(s(a), s(b)));
    }
  }

  TEST_CASE("poly2 division identity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      const Poly2 a(rng()), d(rng() >> (rng() % 60));
      if (d.is_zero()) continue;
      const auto [q, r] = a.divmod(d);
      CHECK(q * d + r == a);
      CHECK(r.degree() < d.degree());
    }
    CHECK(Poly2::gcd(Poly2(0b110), Poly2(0b1010)) == Poly2(0b110));
  }
}
