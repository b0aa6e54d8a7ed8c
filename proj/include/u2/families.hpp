#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "u2/envelope.hpp"

namespace u2::families {

enum class FamilyTag {
  FamI,
  FamII,
  FamIII,
  FamIV,
  FamV,
  Heisenberg,
  NegativeClass2,
  WitnessChain,
  Example71,
  Example71Extended,
  Random,
};

std::string to_string(FamilyTag t);
/// Accepts the lowercase CLI names ("fam-i", ..., "n7", "witness-chain", "random").
std::optional<FamilyTag> parse_tag(const std::string& s);

/// Family parameters. Unused fields are ignored by families that do not need them.
///   FamI:   size = dim A (>= 1); variant 0 = idempotent y-action, 1 = square-zero y-action.
///   FamII:  size = extra central dimensions; variant 0..2 picks the power map.
///   FamIII: size = dim Z (0..2); variant 1 puts [x1, x2] = z1 when dim Z >= 1.
///   FamIV / FamV: size = dim H (>= 1).
///   WitnessChain: size = k (number of a_i).
///   Random: size = n, seed.
struct FamilySpec {
  FamilyTag tag = FamilyTag::Heisenberg;
  FieldDescriptor field = FieldDescriptor::gf2();
  std::size_t size = 1;
  int variant = 0;
  std::uint64_t seed = 0;
};

RestrictedLieAlgebra make(const FamilySpec& spec);

RestrictedLieAlgebra fam_i(const Field& f, std::size_t dim_a, int variant);
RestrictedLieAlgebra fam_ii(const Field& f, std::size_t extra_center, int variant);
RestrictedLieAlgebra fam_iii(const Field& f, std::size_t dim_z, int variant);
RestrictedLieAlgebra fam_iv(const Field& f, std::size_t dim_h);
/// h_i^[2] = beta^{-1} z_i with beta the field generator, so x needs rescaling by sqrt(beta^{-1}).
RestrictedLieAlgebra fam_v(const Field& f, std::size_t dim_h);
RestrictedLieAlgebra heisenberg(const Field& f);
/// Free class-2 nilpotent algebra on g generators with zero power map.
RestrictedLieAlgebra free_class2(const Field& f, std::size_t g);
/// x1..x4, z12, z13, z14 with [x2,x3] = z14 and z14 toral.
RestrictedLieAlgebra n7(const Field& f);
/// x, y, a_i, c_i = [x, a_i], d_i = [y, a_i]; zero power map; dim 2 + 3k.
RestrictedLieAlgebra witness_chain(const Field& f, std::size_t k);
/// Seven-dimensional algebra over F2(X, Y) with alpha = X, beta = Y; x^[2] = 0.
RestrictedLieAlgebra example71();
/// example71() after adjoining square roots of X and Y.
RestrictedLieAlgebra example71_extended();

struct RandomStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
};

/// Rejection-sampled restricted algebra, deterministic in (n, field, seed).
/// Throws GenerationBudgetExceeded after `budget` rejected drafts.
RestrictedLieAlgebra random_instance(std::size_t n, const Field& f, std::uint64_t seed,
                                     RandomStats* stats = nullptr, std::size_t budget = 20000);

struct Example71Report {
  // Part 1: [[x, x x1], [x1, x1 x2 x3], x2] in u(L) over the base field.
  EnvElement obstruction;
  std::string obstruction_text;
  bool obstruction_nonzero = false;
  // Part 2: v = a1 z1 + z2, w = b1 z1 + z3 over the extension.
  std::string v_text, w_text;
  bool j_central = false;
  bool j_restricted_ideal = false;
  bool j_2nilpotent = false;
  // Part 3: restricted ideal generated by x, alpha x1 + x2, beta x1 + x3 in L/J.
  std::size_t quotient_dim = 0;
  std::size_t ideal_dim = 0;
  bool ideal_abelian = false;
  bool ideal_codim1 = false;
  std::string ideal_text;

  bool part1() const { return obstruction_nonzero; }
  bool part2() const { return j_central && j_restricted_ideal && j_2nilpotent; }
  bool part3() const { return ideal_abelian && ideal_codim1; }
  std::string to_string() const;
};

Example71Report example_7_1_report();

}  // namespace u2::families
