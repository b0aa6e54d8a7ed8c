#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "u2/classify.hpp"
#include "u2/error.hpp"
#include "u2/ordinary.hpp"

using namespace u2;
using namespace u2::ordinary;
using u2::test::gf2;
using u2::test::gf4;

namespace {

LieAlgebra affine_line(const Field& f) {
  LieAlgebra l(f, 2, {"x", "y"});
  l.set_bracket(0, 1, l.basis_vec(0));
  return l;
}

std::vector<LieAlgebra> curated(const Field& f) {
  return {abelian(f, 3),          heisenberg(f),          free_class2(f, 3),     two_eigenvectors(f, 0),
          two_eigenvectors(f, 1), two_eigenvectors(f, 2), affine_line(f),        free_class2(f, 4),
          affine_pair(f)};
}

/// Copy of an element into u, so it can be combined with u's own elements.
UEnvElement rehome(const UEnvAlgebra& u, const UEnvElement& a) {
  UEnvElement out = u.zero();
  for (const auto& [e, c] : a.terms) out = u.add(out, u.monomial(e, c));
  return out;
}

Exponents exps(std::initializer_list<std::uint32_t> e) { return Exponents(e); }

}  // namespace

TEST_SUITE("ordinary") {
  TEST_CASE("straightening without truncation") {
    const Field f = gf2();
    const UEnvAlgebra u(affine_line(f));
    const UEnvElement x = u.gen(0), y = u.gen(1);
    CHECK(u_normal_mul(u, y, x) == u.add(u.monomial(exps({1, 1}), f.one()), x));
    CHECK(u.mul(x, x) == u.monomial(exps({2, 0}), f.one()));
    CHECK(u.mul(x, x).degree() == 2);
    CHECK(u.bracket(x, y) == x);
  }

  TEST_CASE("associativity, degree bound and the domain property") {
    std::mt19937_64 rng(71);
    for (const Field& f : {gf2(), gf4()}) {
      for (const LieAlgebra& l : curated(f)) {
        const UEnvAlgebra u(l);
        for (int trial = 0; trial < 20; ++trial) {
          const UEnvElement a = u.random(rng, 3, 3), b = u.random(rng, 3, 3), c = u.random(rng, 2, 2);
          CHECK(u.mul(u.mul(a, b), c) == u.mul(a, u.mul(b, c)));
          const UEnvElement ab = u.mul(a, b);
          if (!a.is_zero() && !b.is_zero()) {
            CHECK_FALSE(ab.is_zero());
            CHECK(ab.degree() == a.degree() + b.degree());
          }
        }
        for (std::size_t i = 0; i < l.dim(); ++i)
          for (std::size_t j = 0; j < l.dim(); ++j)
            CHECK(u.bracket(u.gen(i), u.gen(j)) == u.from_lie(l.bracket_basis(i, j)));
      }
    }
  }

  TEST_CASE("operands from another algebra are rejected") {
    const UEnvAlgebra a(heisenberg(gf2())), b(heisenberg(gf2()));
    CHECK_THROWS_AS(a.mul(a.gen(0), b.gen(0)), Error);
  }

  TEST_CASE("four-condition verdicts on curated algebras") {
    for (const Field& f : {gf2(), gf4()}) {
      CHECK(corollary_classify(abelian(f, 3)).certificate->tag == OrdTag::Abelian);
      const OrdVerdict h3 = corollary_classify(heisenberg(f));
      REQUIRE(h3.outcome == OrdOutcome::Solvable);
      CHECK(h3.certificate->tag == OrdTag::AbelianCodim1);
      CHECK(h3.certificate->ideal->dim() == 2);
      CHECK(corollary_classify(free_class2(f, 3)).certificate->tag == OrdTag::Class2Codim3);
      CHECK(corollary_classify(two_eigenvectors(f, 1)).certificate->tag == OrdTag::TwoEigenvectors);
      const OrdVerdict fc4 = corollary_classify(free_class2(f, 4));
      CHECK(fc4.outcome == OrdOutcome::NotSolvable);
      CHECK(fc4.conditions_fail);
      CHECK(fc4.witness.has_value());
      CHECK(corollary_classify(affine_pair(f)).outcome == OrdOutcome::NotSolvable);
    }
  }

  TEST_CASE("certificates re-verify") {
    for (const LieAlgebra& l : curated(gf4())) {
      const OrdVerdict v = corollary_classify(l);
      if (v.outcome == OrdOutcome::Solvable) CHECK(verify_certificate(l, *v.certificate));
    }
  }

  TEST_CASE("four-tuple witness on free class-2 of rank 4") {
    const Field f = gf2();
    const LieAlgebra l = free_class2(f, 4);
    const UEnvAlgebra u(l);
    const Witness w = four_tuple_pattern(u, 0, 1, 2, 3);
    // z14^2 (z12 z34 + z13 z24 + z14 z23), basis x1..x4, z12, z13, z14, z23, z24, z34.
    UEnvElement expected = u.zero();
    expected = u.add(expected, u.monomial(exps({0, 0, 0, 0, 1, 0, 2, 0, 0, 1}), f.one()));
    expected = u.add(expected, u.monomial(exps({0, 0, 0, 0, 0, 1, 2, 0, 1, 0}), f.one()));
    expected = u.add(expected, u.monomial(exps({0, 0, 0, 0, 0, 0, 3, 1, 0, 0}), f.one()));
    CHECK(w.value == expected);
    const WitnessResult r = witness_search(l);
    REQUIRE(r.witness.has_value());
    CHECK_FALSE(r.witness->value.is_zero());
  }

  TEST_CASE("witness search is exhausted exactly on solvable curated algebras") {
    WitnessBudget budget;
    budget.max_evaluations = 20000;
    for (const LieAlgebra& l : curated(gf2())) {
      const OrdVerdict v = corollary_classify(l, budget);
      const WitnessResult r = witness_search(l, budget);
      CHECK((v.outcome == OrdOutcome::Solvable) == r.exhausted());
    }
  }

  TEST_CASE("abelian codim-1 ideals and infinite fields") {
    CHECK(abelian_codim1_ideal(heisenberg(gf2())).has_value());
    CHECK_FALSE(abelian_codim1_ideal(free_class2(gf2(), 3)).has_value());
    const Field rf = Field::ratfunc2();
    CHECK(corollary_classify(heisenberg(rf)).certificate->tag == OrdTag::AbelianCodim1);
    CHECK(corollary_classify(affine_pair(rf)).outcome == OrdOutcome::NotSolvable);
    CHECK(corollary_classify(free_class2(rf, 3)).certificate->tag == OrdTag::Class2Codim3);
    CHECK_THROWS_AS(abelian_codim1_ideal(free_class2(rf, 4)), Error);
    const OrdVerdict fc4 = corollary_classify(free_class2(rf, 4));
    CHECK(fc4.outcome == OrdOutcome::NotSolvable);
    CHECK_FALSE(fc4.conditions_fail);
    CHECK(fc4.witness.has_value());
  }

  TEST_CASE("two-envelope spans") {
    const TwoEnvelope one = two_envelope(abelian(gf2(), 1), 3);
    CHECK_FALSE(one.stabilized);
    CHECK(one.total_dims == std::vector<std::size_t>{1, 2, 3, 4});
    const TwoEnvelope aff = two_envelope(affine_line(gf2()), 3);
    CHECK_FALSE(aff.stabilized);
    for (std::size_t k = 1; k < aff.total_dims.size(); ++k) CHECK(aff.total_dims[k] > aff.total_dims[k - 1]);
    const TwoEnvelope zero = two_envelope(abelian(gf2(), 0), 3);
    CHECK(zero.stabilized);
    CHECK(zero.algebra.has_value());
  }

  TEST_CASE("two-envelope spans follow their definition") {
    const LieAlgebra l = heisenberg(gf4());
    const UEnvAlgebra u(l);
    const TwoEnvelope env = two_envelope(l, 2);
    REQUIRE(env.spans.size() == 3);
    for (std::size_t k = 1; k < env.spans.size(); ++k) {
      std::vector<UEnvElement> prev;
      for (const auto& b : env.spans[k - 1].basis) prev.push_back(rehome(u, b));
      USpan current;
      for (const auto& b : env.spans[k].basis) current.basis.push_back(rehome(u, b));
      current = span_in_u(u, current.basis);
      std::vector<UEnvElement> gens;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        gens.push_back(u.mul(prev[i], prev[i]));
        for (std::size_t j = i + 1; j < prev.size(); ++j) gens.push_back(u.bracket(prev[i], prev[j]));
      }
      const USpan expected = span_in_u(u, gens);
      CHECK(expected.dim() == current.dim());
      for (const auto& g : gens) CHECK(span_contains(u, current, g));
      for (const auto& b : prev) CHECK(span_contains(u, current, u.mul(b, b)));
    }
  }

  TEST_CASE("descent of abelian codim-1 ideals") {
    const DescentReport h3 = descent_abelian_codim1(heisenberg(gf2()), extend(gf2(), 2));
    CHECK(h3.base_has);
    CHECK(h3.extension_has);
    CHECK(h3.implication_holds);
    const DescentReport ab = descent_abelian_codim1(abelian(gf2(), 3), extend(gf2(), 2));
    CHECK(ab.base_has);
    CHECK(ab.extension_has);
    std::size_t failures = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const LieAlgebra l = random_metabelian(2 + seed % 4, gf2(), seed);
      CHECK(l.check_lie_axioms().ok());
      if (!descent_abelian_codim1(l, extend(gf2(), 2)).implication_holds) ++failures;
    }
    CHECK(failures == 0);
  }

  TEST_CASE("random metabelian algebras are metabelian and deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const LieAlgebra a = random_metabelian(5, gf4(), seed), b = random_metabelian(5, gf4(), seed);
      CHECK(a.bracket_span(a.derived(), a.derived()).is_zero());
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(a.bracket_basis(i, j) == b.bracket_basis(i, j));
    }
  }
}
