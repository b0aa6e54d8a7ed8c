#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "u2/envelope.hpp"
#include "u2/families.hpp"
#include "u2/kernels.hpp"

using namespace u2;
using u2::test::gf2;
using u2::test::gf4;

namespace {

std::vector<RestrictedLieAlgebra> corpus() {
  std::vector<RestrictedLieAlgebra> out;
  for (const Field& f : {gf2(), gf4()}) {
    out.push_back(families::heisenberg(f));
    out.push_back(families::fam_i(f, 2, 0));
    out.push_back(families::fam_i(f, 3, 1));
    out.push_back(families::fam_iii(f, 1, 1));
    out.push_back(families::fam_iv(f, 1));
    out.push_back(families::fam_v(f, 1));
  }
  out.push_back(families::free_class2(gf2(), 3));
  for (std::uint64_t seed = 1; seed <= 4; ++seed) out.push_back(families::random_instance(4, gf2(), seed));
  return out;
}

RestrictedLieAlgebra one_dim(const Field& f, bool toral) {
  RestrictedLieAlgebra l(f, 1, {"a"});
  if (toral) l.set_pmap(0, l.basis_vec(0));
  return l;
}

/// Derived length of u(L)/u(L)I computed inside u(L).
DerivedSeries derived_series_mod(const EnvAlgebra& u, const Subspace& ideal) {
  std::vector<Vec> k;
  for (Mask m = 0; m < u.dim(); ++m)
    for (const Vec& v : ideal.basis()) k.push_back(u.to_vec(u.mul(u.monomial(m), u.from_lie(v))));
  const Subspace kernel = Subspace::span(u.field(), u.dim(), k);
  DerivedSeries out;
  Subspace d = Subspace::full(u.field(), u.dim());
  out.dims.push_back(d.dim() - kernel.dim());
  for (std::size_t step = 0; step < 64; ++step) {
    if (kernel.contains(d)) {
      out.reached_zero = true;
      out.length = step;
      return out;
    }
    const Subspace next = env_bracket_span(u, d, d).sum(kernel);
    if (next == d) {
      out.length = step;
      out.stable_dim = d.dim() - kernel.dim();
      return out;
    }
    d = next;
    out.dims.push_back(d.dim() - kernel.dim());
  }
  return out;
}

}  // namespace

TEST_SUITE("envelope") {
  TEST_CASE("straightening in u(h3)") {
    const EnvAlgebra u(families::heisenberg(gf2()));
    const EnvElement e1 = u.gen(0), e2 = u.gen(1), e3 = u.gen(2);
    CHECK(u.mul(e2, e1) == u.add(u.monomial(0b011), e3));
    CHECK(u.mul(e1, e1).is_zero());
    CHECK(u.mul(u.mul(u.monomial(0b011), e2), e2) == u.mul(u.monomial(0b011), u.mul(e2, e2)));
    CHECK(u.bracket(e1, e2) == e3);
    CHECK(u.bracket(e1, e1).is_zero());
    CHECK(u.bracket(u.one(), e2).is_zero());
    CHECK(u.format(u.mul(e2, e1)) == "e1*e2 + e3");
  }

  TEST_CASE("defining relations and PBW basis") {
    for (const auto& l : corpus()) {
      const EnvAlgebra u(l);
      for (std::size_t i = 0; i < l.dim(); ++i) {
        CHECK(u.mul(u.gen(i), u.gen(i)) == u.from_lie(l.pmap(i)));
        for (std::size_t j = 0; j < l.dim(); ++j)
          CHECK(u.bracket(u.gen(i), u.gen(j)) == u.from_lie(l.bracket_basis(i, j)));
      }
      for (Mask m = 0; m < u.dim(); ++m) {
        EnvElement p = u.one();
        for (std::size_t i = 0; i < l.dim(); ++i)
          if ((m >> i) & 1u) p = u.mul(p, u.gen(i));
        CHECK(p == u.monomial(m));
      }
    }
  }

  TEST_CASE("associativity on random triples") {
    std::mt19937_64 rng(53);
    for (const auto& l : corpus()) {
      const EnvAlgebra u(l);
      for (int trial = 0; trial < 200; ++trial) {
        const EnvElement a = u.random(rng, 0.4), b = u.random(rng, 0.4), c = u.random(rng, 0.4);
        CHECK(u.mul(u.mul(a, b), c) == u.mul(a, u.mul(b, c)));
      }
    }
  }

  TEST_CASE("vector round trip and powers") {
    std::mt19937_64 rng(59);
    const EnvAlgebra u(families::fam_iii(gf4(), 1, 1));
    for (int trial = 0; trial < 20; ++trial) {
      const EnvElement a = u.random(rng);
      CHECK(u.from_vec(u.to_vec(a)) == a);
      CHECK(u.pow(a, 3) == u.mul(a, u.mul(a, a)));
    }
    const EnvAlgebra h(families::heisenberg(gf2()));
    CHECK(h.nilpotency_exponent(h.gen(0)) == std::optional<std::size_t>(1));
    const EnvAlgebra t(one_dim(gf2(), true));
    CHECK_FALSE(t.nilpotency_exponent(t.gen(0)).has_value());
  }

  TEST_CASE("oracle on h3 and n7") {
    const EnvAlgebra h3(families::heisenberg(gf2()));
    const DerivedSeries s = lie_derived_series(h3);
    CHECK(s.reached_zero);
    CHECK(s.length == 2);
    CHECK(s.dims == std::vector<std::size_t>{8, 3, 0});
    const SzResult sz = sz_nilpotency(h3);
    CHECK(sz.nilpotent);

    const EnvAlgebra n7(families::n7(gf2()));
    const DerivedSeries sn = lie_derived_series(n7);
    CHECK_FALSE(sn.reached_zero);
    CHECK(sn.stable_dim == 60);
    CHECK(sn.dims == std::vector<std::size_t>{128, 96, 60});
    const SzResult szn = sz_nilpotency(n7);
    CHECK_FALSE(szn.nilpotent);
    CHECK_FALSE(szn.witness.is_zero());
    CHECK_FALSE(n7.nilpotency_exponent(szn.witness).has_value());
  }

  TEST_CASE("commutative u(L) has a zero S-Z ideal") {
    const EnvAlgebra u(one_dim(gf2(), false));
    const SzResult sz = sz_nilpotency(u);
    CHECK(sz.nilpotent);
    CHECK(sz.ideal_dim == 0);
    CHECK(sz.index == 1);
  }

  TEST_CASE("dense kernels match the reference backend") {
    for (const auto& l : corpus()) {
      const EnvAlgebra u(l);
      if (!kernels::dense_supported(u)) continue;
      const DerivedSeries ref = lie_derived_series(u, Backend::Reference);
      for (Backend b : {Backend::DenseSerial, Backend::DenseParallel}) {
        const DerivedSeries d = lie_derived_series(u, b);
        CHECK(d.dims == ref.dims);
        CHECK(d.reached_zero == ref.reached_zero);
        CHECK(d.length == ref.length);
      }
      const SzResult sref = sz_nilpotency(u, Backend::Reference);
      for (Backend b : {Backend::DenseSerial, Backend::DenseParallel}) {
        const SzResult sd = sz_nilpotency(u, b);
        CHECK(sd.nilpotent == sref.nilpotent);
        CHECK(sd.index == sref.index);
        CHECK(sd.power_dims == sref.power_dims);
      }
    }
  }

  TEST_CASE("solvable oracle implies a nilpotent S-Z ideal") {
    for (const auto& l : corpus()) {
      const EnvAlgebra u(l);
      if (lie_derived_series(u).reached_zero) CHECK(sz_nilpotency(u).nilpotent);
    }
  }

  TEST_CASE("quotient algebra agrees with the quotient of u(L)") {
    for (const auto& l : corpus()) {
      if (l.dim() > 6) continue;
      for (const Subspace& ideal : {l.center(), l.derived()}) {
        const Subspace closed = l.restricted_closure(ideal.basis()).space;
        if (closed.is_zero()) continue;
        const auto q = l.quotient(closed);
        const DerivedSeries direct = lie_derived_series(EnvAlgebra(q.algebra));
        const DerivedSeries inside = derived_series_mod(EnvAlgebra(l), closed);
        CHECK(direct.reached_zero == inside.reached_zero);
        CHECK(direct.dims == inside.dims);
      }
    }
  }

  TEST_CASE("reducedness examples") {
    CHECK(reducedness_check(one_dim(gf2(), true)).structural);
    CHECK(reducedness_check(one_dim(gf2(), true)).exact == std::optional<bool>(true));
    CHECK_FALSE(reducedness_check(one_dim(gf2(), false)).structural);
    RestrictedLieAlgebra ab(gf2(), 2, {"a", "b"});
    ab.set_pmap(0, ab.basis_vec(0));
    const auto rep = reducedness_check(ab);
    CHECK_FALSE(rep.structural);
    CHECK(rep.exact == std::optional<bool>(false));
  }

  TEST_CASE("solvable filtration certificates") {
    CHECK(cond_ii_certificate(families::heisenberg(gf2())).ok());
    CHECK(cond_ii_certificate(families::free_class2(gf2(), 3)).ok());
    CHECK(cond_ii_certificate(RestrictedLieAlgebra(gf2(), 2)).ok());
  }

  TEST_CASE("two-by-two matrix embedding") {
    const auto h3 = families::heisenberg(gf2());
    const auto rep = m2_embedding_check(h3, h3.span({h3.basis_vec(1), h3.basis_vec(2)}));
    CHECK(rep.ok);
    CHECK(rep.pairs_checked >= 50);
    RestrictedLieAlgebra ab(gf4(), 3);
    CHECK(m2_embedding_check(ab, ab.span({ab.basis_vec(0), ab.basis_vec(1)})).ok);
    const auto f3 = families::fam_iii(gf2(), 1, 0);
    CHECK(m2_embedding_check(f3, f3.span({f3.basis_vec(0), f3.basis_vec(1), f3.basis_vec(3)})).ok);
  }
}
