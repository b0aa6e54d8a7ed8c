#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "u2/classify.hpp"
#include "u2/envelope.hpp"
#include "u2/families.hpp"

using namespace u2;
using u2::test::gf2;
using u2::test::gf4;

namespace {

std::vector<RestrictedLieAlgebra> solvable_corpus() {
  std::vector<RestrictedLieAlgebra> out;
  for (const Field& f : {gf2(), gf4()}) {
    out.push_back(families::heisenberg(f));
    out.push_back(families::fam_i(f, 3, 0));
    out.push_back(families::fam_i(f, 2, 1));
    out.push_back(families::fam_ii(f, 0, 0));
    out.push_back(families::fam_ii(f, 1, 1));
    out.push_back(families::fam_iii(f, 0, 0));
    out.push_back(families::fam_iii(f, 2, 1));
    out.push_back(families::fam_iv(f, 1));
    out.push_back(families::fam_v(f, 1));
  }
  out.push_back(families::fam_v(gf4(), 2));
  return out;
}

Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix p(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p.at(i, j) = f.random(rng);
    if (p.rank() == n) return p;
  }
}

bool oracle_solvable(const RestrictedLieAlgebra& l) { return lie_derived_series(EnvAlgebra(l)).reached_zero; }

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("canonical cores of curated algebras") {
    const auto h3 = families::heisenberg(gf2());
    CHECK(nilpotent_core(h3).ideal.space == h3.center());
    CHECK(nilpotent_core(families::fam_iii(gf2(), 0, 0)).ideal.space.is_zero());
    const auto n7 = families::n7(gf2());
    CHECK(nilpotent_core(n7).ideal.space == n7.span({n7.basis_vec(4), n7.basis_vec(5)}));
  }

  TEST_CASE("cores are 2-nilpotent restricted ideals") {
    for (const auto& l : solvable_corpus()) {
      const CoreResult c = nilpotent_core(l);
      CHECK(l.is_restricted_ideal(c.ideal.space));
      CHECK(l.is_2nilpotent(c.ideal.space).nilpotent);
    }
  }

  TEST_CASE("matchers on curated quotients") {
    const auto h3 = families::heisenberg(gf2());
    const auto q = h3.quotient(h3.center()).algebra;
    const auto c = match_condition(q, ConditionTag::I_CodimLE1Abelian);
    REQUIRE(c.has_value());
    CHECK(verify_certificate(q, *c));
    const auto f3 = families::fam_iii(gf2(), 0, 0);
    const auto c3 = match_condition(f3, ConditionTag::III_TwoEigenvectorsToral);
    REQUIRE(c3.has_value());
    CHECK(verify_certificate(f3, *c3));
    const auto n7 = families::n7(gf2());
    const auto nq = n7.quotient(nilpotent_core(n7).ideal.space).algebra;
    CHECK_FALSE(match_condition(nq, ConditionTag::I_CodimLE1Abelian).has_value());
    CHECK_FALSE(match_condition(nq, ConditionTag::II_Class2Codim3).has_value());
  }

  TEST_CASE("triangularization") {
    const Field f = gf2();
    Matrix upper(f, 3, 3);
    upper.at(0, 1) = f.one();
    upper.at(1, 2) = f.one();
    const auto r = triangularize({upper, upper * upper});
    CHECK(r.triangularizable);
    CHECK(r.flag.size() == 3);
    CHECK(r.flag[0] == u2::test::vec(f, {1, 0, 0}));

    Matrix swap(f, 2, 2);
    swap.at(0, 1) = f.one();
    swap.at(1, 0) = f.one();
    CHECK(triangularize({swap}).triangularizable);

    Matrix a(f, 2, 2), b(f, 2, 2);
    a.at(0, 1) = f.one();
    b.at(1, 0) = f.one();
    const auto nt = triangularize({a, b});
    CHECK_FALSE(nt.triangularizable);
    REQUIRE(nt.witness.has_value());
    CHECK_FALSE(nt.witness->is_nilpotent());

    Matrix rot(f, 2, 2);
    rot.at(0, 1) = f.one();
    rot.at(1, 0) = f.one();
    rot.at(1, 1) = f.one();
    const auto ext = triangularize({rot});
    CHECK(ext.triangularizable);
    CHECK(ext.extension_degree == 2);
  }

  TEST_CASE("necessary tests") {
    CHECK_FALSE(necessary_tests(RestrictedLieAlgebra(gf2(), 3)).has_value());
    CHECK_FALSE(necessary_tests(families::heisenberg(gf2())).has_value());
    const auto n7 = families::n7(gf2());
    const auto fail = necessary_tests(n7);
    REQUIRE(fail.has_value());
    CHECK(fail->tag == NecessaryTag::Class2FourTuple);
    const EnvAlgebra u(n7);
    CHECK_FALSE(u.nilpotency_exponent(fail->witness).has_value());
  }

  TEST_CASE("curated verdicts") {
    const Verdict h3 = classify(families::heisenberg(gf2()));
    CHECK(h3.outcome == Outcome::Solvable);
    REQUIRE(h3.certificate.has_value());
    CHECK(h3.certificate->tag == ConditionTag::I_CodimLE1Abelian);
    CHECK(h3.oracle_agrees == std::optional<bool>(true));

    const Verdict v = classify(families::fam_v(gf4(), 2));
    CHECK(v.outcome == Outcome::Solvable);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->tag == ConditionTag::V_MatchedSquaresH);
    CHECK(v.certificate->rescale.has_value());

    const Verdict n7 = classify(families::n7(gf2()));
    CHECK(n7.outcome == Outcome::NotSolvable);
    CHECK(n7.reason == std::optional<NotSolvableReason>(NotSolvableReason::NecessaryTestFailed));
    CHECK(n7.necessary_tag == std::optional<NecessaryTag>(NecessaryTag::Class2FourTuple));
    CHECK(n7.oracle_agrees == std::optional<bool>(true));
  }

  TEST_CASE("solvable verdicts carry re-verifiable certificates and agree with the oracle") {
    for (const auto& l : solvable_corpus()) {
      const Verdict v = classify(l);
      CHECK(v.outcome == Outcome::Solvable);
      if (v.outcome != Outcome::Solvable) continue;
      REQUIRE(v.certificate.has_value());
      REQUIRE(v.matched.has_value());
      CHECK(verify_certificate(*v.matched, *v.certificate));
      if (v.oracle_agrees) CHECK(*v.oracle_agrees);
    }
  }

  TEST_CASE("verdicts are invariant under change of basis") {
    std::mt19937_64 rng(61);
    std::vector<RestrictedLieAlgebra> algebras = solvable_corpus();
    algebras.push_back(families::n7(gf2()));
    for (const auto& l : algebras) {
      const auto m = l.change_basis(random_invertible(l.field(), l.dim(), rng));
      REQUIRE(m.check_axioms().ok());
      CHECK(classify(m).outcome == classify(l).outcome);
    }
  }

  TEST_CASE("oracle verdict survives scalar extension") {
    std::vector<RestrictedLieAlgebra> algebras = {families::heisenberg(gf2()), families::fam_iii(gf2(), 1, 1),
                                                  families::n7(gf2())};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) algebras.push_back(families::random_instance(4, gf2(), seed));
    for (const auto& l : algebras) CHECK(oracle_solvable(l) == oracle_solvable(l.base_change(extend(gf2(), 2))));
  }

  TEST_CASE("random instances never disagree with the oracle") {
    std::size_t inconclusive = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const Field f = seed % 2 ? gf2() : gf4();
      const auto l = families::random_instance(2 + seed % 4, f, seed);
      const Verdict v = classify(l);
      ++total;
      if (v.outcome == Outcome::Inconclusive) {
        ++inconclusive;
        continue;
      }
      CHECK(v.oracle_agrees == std::optional<bool>(true));
    }
    MESSAGE("inconclusive " << inconclusive << " of " << total);
    CHECK(inconclusive * 10 <= total);
  }
}
