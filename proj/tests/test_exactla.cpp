#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "u2/error.hpp"
#include "u2/families.hpp"
#include "u2/matrix.hpp"
#include "u2/subspace.hpp"

using namespace u2;
using u2::test::gf2;
using u2::test::gf4;
using u2::test::random_vec;
using u2::test::vec;

namespace {

std::vector<Vec> random_vectors(const Field& f, std::size_t count, std::size_t n, std::mt19937_64& rng) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_vec(f, n, rng));
  return out;
}

}  // namespace

TEST_SUITE("exactla") {
  TEST_CASE("span of three dependent vectors") {
    const Field f = gf2();
    const Subspace s = Subspace::span(f, 3, {vec(f, {1, 1, 0}), vec(f, {0, 1, 1}), vec(f, {1, 0, 1})});
    CHECK(s.dim() == 2);
    CHECK(s.contains(vec(f, {1, 1, 0})));
    CHECK_FALSE(s.contains(vec(f, {1, 0, 0})));
    CHECK(s.pivots() == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("word-packed and generic elimination agree") {
    std::mt19937_64 rng(101);
    const Field f = gf2();
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng() % 90, count = rng() % 12;
      const auto vs = random_vectors(f, count, n, rng);
      CHECK(Subspace::span(f, n, vs) == Subspace::span_generic(f, n, vs));
    }
  }

  TEST_CASE("dimension formula and modular law") {
    std::mt19937_64 rng(7);
    for (const Field& f : {gf2(), gf4()}) {
      for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        const Subspace a = Subspace::span(f, n, random_vectors(f, rng() % (n + 1), n, rng));
        const Subspace b = Subspace::span(f, n, random_vectors(f, rng() % (n + 1), n, rng));
        CHECK(a.sum(b).dim() + a.intersect(b).dim() == a.dim() + b.dim());
        const Subspace c = a.sum(Subspace::span(f, n, random_vectors(f, 1, n, rng)));
        CHECK(c.contains(a));
        CHECK(c.intersect(a.sum(b)) == a.sum(c.intersect(b)));
      }
    }
  }

  TEST_CASE("canonical form makes equality basis independent") {
    std::mt19937_64 rng(9);
    const Field f = gf4();
    for (int trial = 0; trial < 40; ++trial) {
      const auto vs = random_vectors(f, 3, 5, rng);
      std::vector<Vec> mixed = {add(f, vs[0], vs[1]), vs[1], scale(f, f.generator(), vs[2])};
      CHECK(Subspace::span(f, 5, vs) == Subspace::span(f, 5, mixed));
    }
  }

  TEST_CASE("quotient project and lift round trip") {
    std::mt19937_64 rng(13);
    const Field f = gf4();
    for (int trial = 0; trial < 40; ++trial) {
      const Subspace total = Subspace::full(f, 5);
      const Subspace sub = Subspace::span(f, 5, random_vectors(f, rng() % 4, 5, rng));
      const Quotient q(total, sub);
      CHECK(q.dim() + sub.dim() == 5);
      const Vec w = random_vec(f, q.dim(), rng);
      CHECK(q.project(q.lift(w)) == w);
      const Vec v = random_vec(f, 5, rng);
      CHECK(sub.contains(add(f, v, q.lift(q.project(v)))));
    }
  }

  TEST_CASE("h3 modulo its center is two-dimensional") {
    const auto h3 = families::heisenberg(gf2());
    const Quotient q(h3.whole(), h3.center());
    CHECK(q.dim() == 2);
  }

  TEST_CASE("coordinates outside a subspace throw") {
    const Field f = gf2();
    const Subspace s = Subspace::span(f, 3, {vec(f, {1, 0, 0})});
    CHECK_THROWS_AS(s.coordinates(vec(f, {0, 1, 0})), Error);
    CHECK(s.coordinates(vec(f, {1, 0, 0})) == vec(f, {1}));
  }

  TEST_CASE("matrix rank, nullspace and solve") {
    std::mt19937_64 rng(21);
    const Field f = gf4();
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      const Matrix m = Matrix::from_rows(f, c, random_vectors(f, r, c, rng));
      const auto ns = m.nullspace();
      CHECK(ns.size() + m.rank() == c);
      for (const Vec& v : ns) CHECK(is_zero(m.apply(v)));
      const Vec x = random_vec(f, c, rng);
      const auto sol = solve(m, m.apply(x));
      REQUIRE(sol.has_value());
      CHECK(m.apply(*sol) == m.apply(x));
    }
    Matrix n(gf2(), 2, 2);
    n.at(0, 1) = gf2().one();
    CHECK(n.is_nilpotent());
    CHECK_FALSE(Matrix::identity(gf2(), 2).is_nilpotent());
  }
}
