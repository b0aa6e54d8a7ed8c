#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "u2/envelope.hpp"
#include "u2/error.hpp"
#include "u2/families.hpp"
#include "u2/resla.hpp"

using namespace u2;
using u2::test::gf2;
using u2::test::gf4;
using u2::test::random_vec;

namespace {

RestrictedLieAlgebra toral_line(const Field& f) {
  RestrictedLieAlgebra l(f, 1, {"a"});
  l.set_pmap(0, l.basis_vec(0));
  return l;
}

/// Augmentation ideal of u(I) is nilpotent: right products by generators reach zero.
bool augmentation_nilpotent(const RestrictedLieAlgebra& l, const Subspace& ideal) {
  if (ideal.is_zero()) return true;
  const EnvAlgebra u(l.subalgebra(ideal));
  std::vector<EnvElement> layer;
  for (std::size_t i = 0; i < u.generators(); ++i) layer.push_back(u.gen(i));
  for (std::size_t step = 0; step <= u.dim(); ++step) {
    std::vector<Vec> next;
    for (const auto& p : layer)
      for (std::size_t g = 0; g < u.generators(); ++g) next.push_back(u.to_vec(u.mul_gen(p, g)));
    const Subspace s = Subspace::span(u.field(), u.dim(), next);
    if (s.is_zero()) return true;
    layer.clear();
    for (const Vec& v : s.basis()) layer.push_back(u.from_vec(v));
  }
  return false;
}

std::vector<RestrictedLieAlgebra> corpus() {
  std::vector<RestrictedLieAlgebra> out;
  for (const Field& f : {gf2(), gf4()}) {
    out.push_back(families::heisenberg(f));
    out.push_back(families::fam_i(f, 3, 0));
    out.push_back(families::fam_i(f, 3, 1));
    out.push_back(families::fam_ii(f, 1, 2));
    out.push_back(families::fam_iii(f, 2, 1));
    out.push_back(families::fam_iv(f, 2));
    out.push_back(families::fam_v(f, 1));
    out.push_back(families::n7(f));
    out.push_back(families::witness_chain(f, 1));
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) out.push_back(families::random_instance(4, gf2(), seed));
  return out;
}

}  // namespace

TEST_SUITE("resla") {
  TEST_CASE("h3 axioms and an injected restrictedness violation") {
    auto h3 = families::heisenberg(gf2());
    CHECK(h3.check_axioms().ok());
    h3.set_pmap(0, h3.basis_vec(0));
    const AxiomReport rep = h3.check_axioms();
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations.front().kind == AxiomKind::Restrictedness);
    CHECK(rep.violations.front().i == 0);
    CHECK(toral_line(gf2()).check_axioms().ok());
  }

  TEST_CASE("pmap_eval examples") {
    const auto h3 = families::heisenberg(gf2());
    CHECK(h3.pmap_eval(add(gf2(), h3.basis_vec(0), h3.basis_vec(1))) == h3.basis_vec(2));
    const Field f = gf4();
    const auto a = toral_line(f);
    CHECK(a.pmap_eval(scale(f, f.generator(), a.basis_vec(0))) == scale(f, f.from_bits(0b11), a.basis_vec(0)));
  }

  TEST_CASE("pmap_eval is semilinear with the bracket as cross term") {
    std::mt19937_64 rng(31);
    for (const auto& l : corpus()) {
      const Field& f = l.field();
      for (int trial = 0; trial < 10; ++trial) {
        const Vec v = random_vec(f, l.dim(), rng), w = random_vec(f, l.dim(), rng);
        const Scalar c = f.random(rng);
        CHECK(l.pmap_eval(scale(f, c, v)) == scale(f, f.square(c), l.pmap_eval(v)));
        CHECK(l.pmap_eval(add(f, v, w)) == add(f, add(f, l.pmap_eval(v), l.pmap_eval(w)), l.bracket(v, w)));
        CHECK(l.ad(l.pmap_eval(v)) == l.ad(v) * l.ad(v));
      }
    }
  }

  TEST_CASE("h3 central series") {
    const auto h3 = families::heisenberg(gf2());
    const Subspace z = h3.span({h3.basis_vec(2)});
    const auto upper = h3.series(Series::UpperCentral);
    REQUIRE(upper.size() == 3);
    CHECK(upper[0].is_zero());
    CHECK(upper[1] == z);
    CHECK(upper[2] == h3.whole());
    const auto lower = h3.series(Series::LowerCentral);
    REQUIRE(lower.size() == 3);
    CHECK(lower[0] == h3.whole());
    CHECK(lower[1] == z);
    CHECK(lower[2].is_zero());
    CHECK(h3.center() == z);
    const auto derived = families::fam_i(gf2(), 1, 1).series(Series::Derived);
    CHECK(derived.back().is_zero());
  }

  TEST_CASE("lower and upper central series annihilate each other") {
    for (const auto& l : corpus()) {
      const auto lower = l.series(Series::LowerCentral);
      const auto upper = l.series(Series::UpperCentral);
      if (!lower.back().is_zero()) continue;
      for (std::size_t i = 0; i < lower.size() && i < upper.size(); ++i)
        CHECK(l.bracket_span(lower[i], upper[i]).is_zero());
    }
  }

  TEST_CASE("centralizers and restricted closures in h3") {
    const auto h3 = families::heisenberg(gf2());
    const Subspace e1 = h3.span({h3.basis_vec(0)});
    const Subspace e13 = h3.span({h3.basis_vec(0), h3.basis_vec(2)});
    CHECK(h3.centralizer(e1) == e13);
    CHECK(h3.centralizer(Subspace::zero(gf2(), 3)) == h3.whole());
    CHECK(h3.centralizer(h3.whole()) == h3.center());
    CHECK(h3.restricted_closure({h3.basis_vec(2)}).space == h3.center());
    CHECK(h3.restricted_closure({h3.basis_vec(0)}).space == e13);
    CHECK(h3.restricted_closure(h3.whole().basis()).space == h3.whole());
  }

  TEST_CASE("2-nilpotency in element and ideal mode") {
    RestrictedLieAlgebra l(gf2(), 2, {"x", "y"});
    l.set_pmap(0, l.basis_vec(1));
    const auto r = l.is_2nilpotent(l.basis_vec(0));
    CHECK(r.nilpotent);
    CHECK(r.steps == 2);
    CHECK_FALSE(toral_line(gf2()).is_2nilpotent(Vec{gf2().one()}).nilpotent);
    const auto h3 = families::heisenberg(gf2());
    CHECK(h3.is_2nilpotent(h3.span({h3.basis_vec(0), h3.basis_vec(2)})).nilpotent);
    CHECK(h3.is_2abelian(h3.whole()));
    const auto n7 = families::n7(gf2());
    CHECK_FALSE(n7.is_2abelian(n7.whole()));
  }

  TEST_CASE("ideal 2-nilpotency agrees with the augmentation ideal oracle") {
    for (const auto& l : corpus()) {
      std::vector<Subspace> ideals = {l.derived(), l.center(), l.whole()};
      for (const Subspace& s : l.series(Series::LowerCentral)) ideals.push_back(s);
      for (const Subspace& ideal : ideals) {
        const Subspace closed = l.restricted_closure(ideal.basis()).space;
        if (closed.dim() > 10) continue;
        CHECK(l.is_2nilpotent(closed).nilpotent == augmentation_nilpotent(l, closed));
      }
    }
  }

  TEST_CASE("torus decomposition examples") {
    RestrictedLieAlgebra ab(gf2(), 2, {"a", "b"});
    ab.set_pmap(0, ab.basis_vec(0));
    auto [t, n] = ab.torus_decomposition();
    CHECK(t == ab.span({ab.basis_vec(0)}));
    CHECK(n == ab.span({ab.basis_vec(1)}));

    RestrictedLieAlgebra zero(gf4(), 2);
    std::tie(t, n) = zero.torus_decomposition();
    CHECK(t.is_zero());
    CHECK(n == zero.whole());

    RestrictedLieAlgebra swap(gf2(), 2, {"a", "b"});
    swap.set_pmap(0, swap.basis_vec(1));
    swap.set_pmap(1, swap.basis_vec(0));
    std::tie(t, n) = swap.torus_decomposition();
    CHECK(t == swap.whole());
    CHECK(n.is_zero());
  }

  TEST_CASE("torus part is pmap-bijective and the nilpotent part is 2-nilpotent") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
      const Field f = trial % 2 ? gf4() : gf2();
      const std::size_t n = 1 + rng() % 4;
      RestrictedLieAlgebra l(f, n);
      for (std::size_t i = 0; i < n; ++i) l.set_pmap(i, random_vec(f, n, rng));
      const auto [t, nil] = l.torus_decomposition();
      CHECK(t.dim() + nil.dim() == n);
      CHECK(l.is_2nilpotent(nil).nilpotent);
      std::vector<Vec> images;
      for (const Vec& v : t.basis()) images.push_back(l.pmap_eval(v));
      CHECK(Subspace::span(f, n, images) == t);
    }
  }

  TEST_CASE("quotient, base change and direct sum") {
    const auto h3 = families::heisenberg(gf2());
    const auto q = h3.quotient(h3.center());
    CHECK(q.algebra.dim() == 2);
    CHECK(q.algebra.is_abelian());
    CHECK(is_zero(q.algebra.pmap(0)));
    const auto h3_4 = h3.base_change(extend(gf2(), 2));
    CHECK(h3_4.field() == gf4());
    CHECK(h3_4.bracket_basis(0, 1) == u2::test::vec(gf4(), {0, 0, 1}));
    CHECK(h3_4.check_axioms().ok());
    const auto sum = h3.direct_sum(toral_line(gf2()));
    CHECK(sum.dim() == 4);
    CHECK(sum.center() == sum.span({sum.basis_vec(2), sum.basis_vec(3)}));
    CHECK(sum.check_axioms().ok());
  }

  TEST_CASE("change of basis preserves the axioms and center dimension") {
    std::mt19937_64 rng(43);
    for (const auto& l : corpus()) {
      Matrix p = Matrix::identity(l.field(), l.dim());
      for (std::size_t i = 0; i + 1 < l.dim(); ++i) p.at(i, i + 1) = l.field().random(rng);
      const auto m = l.change_basis(p);
      CHECK(m.check_axioms().ok());
      CHECK(m.center().dim() == l.center().dim());
      CHECK(m.derived().dim() == l.derived().dim());
    }
  }

  TEST_CASE("every new structure constant in h3 breaks the axioms") {
    const auto h3 = families::heisenberg(gf4());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          if (!h3.bracket_basis(i, j)[k].is_zero()) continue;
          for (std::uint64_t d = 1; d < 4; ++d)
            CHECK_FALSE(u2::test::mutate_bracket(h3, i, j, k, gf4().from_bits(d)).check_axioms().ok());
        }
  }
}
