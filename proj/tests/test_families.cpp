#include <doctest.h>

#include "helpers.hpp"
#include "u2/error.hpp"
#include "u2/families.hpp"

using namespace u2;
using namespace u2::families;
using u2::test::gf2;
using u2::test::gf4;

TEST_SUITE("families") {
  TEST_CASE("curated instances satisfy the axioms") {
    for (const Field& f : {gf2(), gf4()}) {
      for (std::size_t m = 1; m <= 7; ++m)
        for (int v = 0; v <= 1; ++v) CHECK(fam_i(f, m, v).check_axioms().ok());
      for (std::size_t c = 0; c <= 2; ++c)
        for (int v = 0; v <= 2; ++v) CHECK(fam_ii(f, c, v).check_axioms().ok());
      for (std::size_t z = 0; z <= 2; ++z)
        for (int v = 0; v <= 1; ++v) CHECK(fam_iii(f, z, v).check_axioms().ok());
      for (std::size_t h = 1; h <= 3; ++h) {
        CHECK(fam_iv(f, h).check_axioms().ok());
        CHECK(fam_v(f, h).check_axioms().ok());
      }
      CHECK(heisenberg(f).check_axioms().ok());
      CHECK(n7(f).check_axioms().ok());
      CHECK(witness_chain(f, 2).check_axioms().ok());
    }
    CHECK(example71().check_axioms().ok());
    CHECK(example71_extended().check_axioms().ok());
  }

  TEST_CASE("minimal fam-iii shape") {
    const auto l = fam_iii(gf2(), 0, 0);
    CHECK(l.dim() == 3);
    CHECK(l.bracket_basis(0, 2) == l.basis_vec(0));
    CHECK(l.bracket_basis(1, 2) == l.basis_vec(1));
    CHECK(is_zero(l.bracket_basis(0, 1)));
    CHECK(l.pmap(2) == l.basis_vec(2));
    CHECK(is_zero(l.pmap(0)));
    CHECK(is_zero(l.pmap(1)));
  }

  TEST_CASE("tags round trip through their names") {
    for (FamilyTag t : {FamilyTag::FamI, FamilyTag::FamII, FamilyTag::FamIII, FamilyTag::FamIV, FamilyTag::FamV,
                        FamilyTag::Heisenberg, FamilyTag::NegativeClass2, FamilyTag::WitnessChain,
                        FamilyTag::Example71, FamilyTag::Example71Extended, FamilyTag::Random})
      CHECK(parse_tag(to_string(t)) == std::optional<FamilyTag>(t));
    CHECK_FALSE(parse_tag("fam-vi").has_value());
  }

  TEST_CASE("make dispatches on the tag") {
    FamilySpec s;
    s.tag = FamilyTag::Heisenberg;
    CHECK(make(s).dim() == 3);
    s.tag = FamilyTag::WitnessChain;
    s.size = 2;
    CHECK(make(s).dim() == 8);
    s.tag = FamilyTag::FamI;
    s.size = 0;
    CHECK_THROWS_AS(make(s), Error);
  }

  TEST_CASE("random instances are deterministic and valid") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = random_instance(4, gf4(), seed), b = random_instance(4, gf4(), seed);
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a.pmap(i) == b.pmap(i));
        for (std::size_t j = 0; j < 4; ++j) CHECK(a.bracket_basis(i, j) == b.bracket_basis(i, j));
      }
      const auto one = random_instance(1, gf2(), seed);
      CHECK((is_zero(one.pmap(0)) || one.pmap(0) == one.basis_vec(0)));
    }
  }

  TEST_CASE("rejection sampling acceptance rate") {
    RandomStats total;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      RandomStats s;
      const auto l = random_instance(4, gf2(), seed, &s);
      CHECK(l.check_axioms().ok());
      total.attempts += s.attempts;
      total.accepted += s.accepted;
    }
    CHECK(total.accepted == 500);
    MESSAGE("acceptance rate " << double(total.accepted) / double(total.attempts));
  }

  TEST_CASE("seven-dimensional example report") {
    const Example71Report r = example_7_1_report();
    CHECK(r.part1());
    CHECK(r.obstruction_nonzero);
    CHECK(r.j_central);
    CHECK(r.j_restricted_ideal);
    CHECK(r.j_2nilpotent);
    CHECK(r.quotient_dim == 5);
    CHECK(r.ideal_codim1);
  }
}
