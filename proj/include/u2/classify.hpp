#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "u2/envelope.hpp"

namespace u2 {

enum class ConditionTag {
  I_CodimLE1Abelian,
  II_Class2Codim3,
  III_TwoEigenvectorsToral,
  IV_StronglyAbelianH,
  V_MatchedSquaresH,
};

std::string to_string(ConditionTag t);

/// Matched decomposition data, in the coordinates of the algebra it was matched on.
struct Certificate {
  ConditionTag tag = ConditionTag::I_CodimLE1Abelian;
  /// Named elements: "x", "y", "x1", "x2", plus "h1".. for the basis of H.
  std::vector<std::pair<std::string, Vec>> elements;
  /// The abelian ideal A for (i); empty otherwise.
  std::optional<Subspace> ideal;
  /// Scalar by which x was rescaled for (v).
  std::optional<Scalar> rescale;
  std::vector<std::string> relations;
};

/// Independent re-check of every relation a certificate claims.
bool verify_certificate(const RestrictedLieAlgebra& l, const Certificate& c);

std::optional<Certificate> match_condition(const RestrictedLieAlgebra& l, ConditionTag tag);

struct CoreResult {
  RestrictedIdeal ideal;
  /// False when <[[L',L'],L]>_2 is not 2-nilpotent; the ideal then holds only the central part.
  bool derived_part_nilpotent = true;
  std::size_t rounds = 0;
};

/// Fixpoint of quotienting by <[[L',L'],L]>_2 (when 2-nilpotent) and the 2-nilpotent part of <L' ∩ Z>_2.
CoreResult nilpotent_core(const RestrictedLieAlgebra& l);

enum class NecessaryTag { DerivedIdealNotNilpotent, Class2FourTuple, ThreeStepPattern };
std::string to_string(NecessaryTag t);

struct NecessaryFailure {
  NecessaryTag tag;
  EnvElement witness;
  std::string witness_text;
  std::string detail;
};

struct NecessaryOptions {
  /// Tuple tests run only when dim L is at most this.
  std::size_t max_dim_four_tuple = 10;
  std::size_t max_dim_three_step = 6;
};

/// Every witness lies in the S-Z ideal of u(L) and is checked non-nilpotent there.
std::optional<NecessaryFailure> necessary_tests(const RestrictedLieAlgebra& l, const NecessaryOptions& opt = {});

struct TriangularizeResult {
  bool triangularizable = false;
  /// Flag basis: the first j vectors span an invariant subspace for every j.
  std::vector<Vec> flag;
  int extension_degree = 1;
  Field field;
  std::optional<Matrix> witness;  // non-nilpotent element of the derived algebra
  std::string detail;
};

/// Simultaneous triangularization over the ladder GF(2^(k*m)), m = 1..ladder_max.
/// Throws LadderExhausted when some characteristic polynomial still does not split.
TriangularizeResult triangularize(const std::vector<Matrix>& matrices, int ladder_max = 4);

struct ClassifyOptions {
  int extension_ladder_max = 4;
  std::size_t exhaustive_core_dim_limit = 7;
  bool oracle_crosscheck = true;
  /// Oracle runs only when dim L is at most this.
  std::size_t oracle_max_dim = 10;
  Backend oracle_backend = Backend::Auto;
  NecessaryOptions necessary;
};

enum class Outcome { Solvable, NotSolvable, Inconclusive };
enum class NotSolvableReason { SZWitness, OracleStabilized, NecessaryTestFailed };
std::string to_string(Outcome o);
std::string to_string(NotSolvableReason r);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;

  // Solvable
  std::optional<Certificate> certificate;
  std::optional<RestrictedIdeal> core;  // in coordinates of L over the extension
  int extension_degree = 1;             // m in GF(2^(k*m))
  std::optional<FieldDescriptor> extension_field;
  std::optional<RestrictedLieAlgebra> matched;  // the quotient the certificate refers to
  bool alternative_core = false;

  // NotSolvable
  std::optional<NotSolvableReason> reason;
  std::optional<NecessaryTag> necessary_tag;
  EnvElement witness;
  std::string witness_text;
  std::size_t stable_dim = 0;

  // Inconclusive
  std::string inconclusive_reason;

  std::optional<DerivedSeries> oracle;
  /// Set when the oracle ran and a definite verdict was reached.
  std::optional<bool> oracle_agrees;

  std::string summary() const;
};

Verdict classify(const RestrictedLieAlgebra& l, const ClassifyOptions& opt = {});

}  // namespace u2
