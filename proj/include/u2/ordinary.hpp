#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "u2/resla.hpp"

namespace u2::ordinary {

/// PBW exponent vector over the basis of L; entry i is the power of b_i.
using Exponents = std::vector<std::uint32_t>;

/// Sparse element of U(L) in the PBW basis; no stored zero coefficients.
struct UEnvElement {
  std::map<Exponents, Scalar> terms;
  /// Identity of the UEnvAlgebra that produced the element; 0 for the empty element.
  std::uint64_t owner = 0;
  bool is_zero() const { return terms.empty(); }
  std::size_t degree() const;
  friend bool operator==(const UEnvElement& a, const UEnvElement& b) { return a.terms == b.terms; }
};

/// Universal enveloping algebra U(L) with exact, untruncated straightening.
/// Not safe for concurrent use: products are memoized.
class UEnvAlgebra {
 public:
  explicit UEnvAlgebra(LieAlgebra lie);

  const LieAlgebra& lie() const { return lie_; }
  const Field& field() const { return lie_.field(); }
  std::size_t generators() const { return lie_.dim(); }

  UEnvElement zero() const;
  UEnvElement one() const;
  UEnvElement monomial(const Exponents& e, const Scalar& c) const;
  UEnvElement gen(std::size_t i) const;
  UEnvElement from_lie(const Vec& v) const;

  UEnvElement add(const UEnvElement& a, const UEnvElement& b) const;
  UEnvElement scale(const Scalar& c, const UEnvElement& a) const;
  /// Throws AlgebraMismatch when an operand comes from another algebra.
  UEnvElement mul(const UEnvElement& a, const UEnvElement& b) const;
  UEnvElement bracket(const UEnvElement& a, const UEnvElement& b) const;
  UEnvElement pow(const UEnvElement& a, std::uint64_t e) const;

  /// Coordinates in L when a lies in degree exactly 1; nullopt otherwise.
  std::optional<Vec> to_lie(const UEnvElement& a) const;
  /// Random element of degree at most max_degree with at most `terms` monomials.
  UEnvElement random(std::mt19937_64& rng, std::size_t max_degree, std::size_t terms) const;
  std::string format(const UEnvElement& a) const;

 private:
  using Terms = std::map<Exponents, Scalar>;
  const Terms& mono_times_gen(const Exponents& m, std::size_t i) const;
  void check_owner(const UEnvElement& a) const;
  UEnvElement wrap(Terms t) const;

  LieAlgebra lie_;
  std::uint64_t id_ = 0;
  mutable std::map<std::pair<Exponents, std::size_t>, Terms> memo_;
};

UEnvElement u_normal_mul(const UEnvAlgebra& u, const UEnvElement& a, const UEnvElement& b);

// ---------------------------------------------------------------- structure tests

/// Abelian ideal of codimension 1 (or L itself when abelian), by hyperplane enumeration.
/// Enumeration needs a finite field of degree at most 16; returns nullopt when none exists.
/// Throws UnsupportedField when the answer would need enumeration over an infinite field.
std::optional<Subspace> abelian_codim1_ideal(const LieAlgebra& l);

LieAlgebra base_change(const LieAlgebra& l, const Embedding& e);

enum class OrdTag { Abelian, AbelianCodim1, Class2Codim3, TwoEigenvectors };
std::string to_string(OrdTag t);

struct OrdCertificate {
  OrdTag tag = OrdTag::Abelian;
  std::optional<Subspace> ideal;
  /// "x1", "x2", "y" for the two-eigenvector form; complement lifts "x1".."x3" for class 2.
  std::vector<std::pair<std::string, Vec>> elements;
  std::vector<std::string> relations;
};

bool verify_certificate(const LieAlgebra& l, const OrdCertificate& c);

// ---------------------------------------------------------------- witness search

struct Witness {
  /// Name of the commutator pattern that produced the witness.
  std::string pattern;
  /// Arguments of the pattern, in slot order.
  std::vector<UEnvElement> arguments;
  UEnvElement value;
  std::string text;
};

struct WitnessBudget {
  /// Largest PBW degree of a single argument.
  std::size_t depth = 3;
  /// Largest total degree over the five arguments.
  std::size_t degree = 8;
  /// Pattern evaluations before giving up.
  std::size_t max_evaluations = 200000;
};

struct WitnessResult {
  std::optional<Witness> witness;
  std::size_t evaluations = 0;
  /// True when the evaluation cap stopped the search before the degree bound.
  bool budget_hit = false;
  bool exhausted() const { return !witness; }
};

/// Searches for a nonzero [[a,b],[c,d],e] in U(L). Since U(L) is a domain, such an element
/// is not nilpotent, so U(L) is not Lie solvable. Exhausted proves nothing.
WitnessResult witness_search(const LieAlgebra& l, const WitnessBudget& budget = {});

/// [[x4 x3 x1, x4], [x4 x1, x1], x2] for the given basis indices.
Witness four_tuple_pattern(const UEnvAlgebra& u, std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4);

// ---------------------------------------------------------------- classifier

enum class OrdOutcome { Solvable, NotSolvable, Inconclusive };
std::string to_string(OrdOutcome o);

struct OrdVerdict {
  OrdOutcome outcome = OrdOutcome::Inconclusive;
  std::optional<OrdCertificate> certificate;
  /// Set for NotSolvable when the search found one.
  std::optional<Witness> witness;
  /// Set for NotSolvable: every structural condition fails.
  bool conditions_fail = false;
  std::string detail;
  std::string summary() const;
};

/// Structural test of the four conditions; a NotSolvable verdict carries a witness when one is found.
/// Inconclusive only when a condition cannot be decided (enumeration over an infinite field) and no witness is found.
OrdVerdict corollary_classify(const LieAlgebra& l, const WitnessBudget& budget = {});

// ---------------------------------------------------------------- 2-envelope

/// Finite-dimensional subspace of U(L), held as an echelon basis.
struct USpan {
  std::vector<UEnvElement> basis;
  std::size_t dim() const { return basis.size(); }
};

struct TwoEnvelope {
  bool stabilized = false;
  /// spans[0] = L; spans[k] = span of squares and brackets of spans[k-1], which contains L^(2^k).
  std::vector<USpan> spans;
  /// Dimension of spans[0] + ... + spans[k], per k.
  std::vector<std::size_t> total_dims;
  std::optional<RestrictedLieAlgebra> algebra;
};

TwoEnvelope two_envelope(const LieAlgebra& l, std::size_t m_max);

/// Span of the given elements; also used to re-check nesting.
USpan span_in_u(const UEnvAlgebra& u, const std::vector<UEnvElement>& elements);
bool span_contains(const UEnvAlgebra& u, const USpan& s, const UEnvElement& x);

// ---------------------------------------------------------------- descent

struct DescentReport {
  bool base_has = false;
  bool extension_has = false;
  /// extension_has implies base_has.
  bool implication_holds = true;
  std::optional<Subspace> base_ideal;
  std::optional<Subspace> extension_ideal;
};

DescentReport descent_abelian_codim1(const LieAlgebra& l, const Embedding& extension);

// ---------------------------------------------------------------- example algebras

LieAlgebra abelian(const Field& f, std::size_t n);
LieAlgebra heisenberg(const Field& f);
LieAlgebra free_class2(const Field& f, std::size_t g);
/// <x1, x2, y> + Z with [x1,y] = x1, [x2,y] = x2, [x1,x2] = z1 when dim Z >= 1.
LieAlgebra two_eigenvectors(const Field& f, std::size_t dim_z);
/// Two copies of [x,y] = x: no condition holds.
LieAlgebra affine_pair(const Field& f);
/// Random metabelian algebra (L'' = 0) of dimension n, deterministic in (n, field, seed).
LieAlgebra random_metabelian(std::size_t n, const Field& f, std::uint64_t seed);

}  // namespace u2::ordinary
