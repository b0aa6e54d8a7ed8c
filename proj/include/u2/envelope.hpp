#pragma once

#include <cstddef>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "u2/resla.hpp"

namespace u2 {

/// PBW monomial of u(L): bit i set means the factor b_i is present.
using Mask = std::uint32_t;

/// Sparse element of u(L) in the PBW basis; no stored zero coefficients.
struct EnvElement {
  std::map<Mask, Scalar> terms;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const EnvElement&, const EnvElement&) = default;
};

/// Restricted enveloping algebra u(L) with memoized straightening.
/// Not safe for concurrent use until precompute() has run.
class EnvAlgebra {
 public:
  static constexpr std::size_t kMaxGenerators = 16;

  explicit EnvAlgebra(RestrictedLieAlgebra lie);

  const RestrictedLieAlgebra& lie() const { return lie_; }
  const Field& field() const { return lie_.field(); }
  std::size_t generators() const { return lie_.dim(); }
  std::size_t dim() const { return std::size_t{1} << lie_.dim(); }

  EnvElement one() const { return monomial(0); }
  EnvElement monomial(Mask m) const;
  EnvElement gen(std::size_t i) const { return monomial(Mask{1} << i); }
  EnvElement from_lie(const Vec& v) const;

  EnvElement add(const EnvElement& a, const EnvElement& b) const;
  EnvElement scale(const Scalar& c, const EnvElement& a) const;
  /// PBW normal form of a * b.
  EnvElement mul(const EnvElement& a, const EnvElement& b) const;
  EnvElement mul_gen(const EnvElement& a, std::size_t j) const;
  /// b_j * a.
  EnvElement gen_mul(std::size_t j, const EnvElement& a) const;
  EnvElement bracket(const EnvElement& a, const EnvElement& b) const;
  EnvElement pow(const EnvElement& a, std::uint64_t e) const;

  /// Smallest k with a^(2^k) = 0, or nullopt if a is not nilpotent.
  std::optional<std::size_t> nilpotency_exponent(const EnvElement& a) const;

  Vec to_vec(const EnvElement& a) const;
  EnvElement from_vec(const Vec& v) const;
  EnvElement random(std::mt19937_64& rng, double density = 1.0) const;
  std::string format(const EnvElement& a) const;

  /// Normal form of m * b_j, from the memo table.
  const EnvElement& mono_times_gen(Mask m, std::size_t j) const;
  /// Fills the memo table so later calls only read it.
  void precompute() const;

 private:
  RestrictedLieAlgebra lie_;
  mutable std::vector<std::optional<EnvElement>> memo_;
};

enum class Backend { Auto, Reference, DenseSerial, DenseParallel };

struct DerivedSeries {
  std::vector<std::size_t> dims;  // dims[0] = dim D_0
  bool reached_zero = false;
  /// Number of steps to reach 0 when reached_zero; otherwise steps to stabilize.
  std::size_t length = 0;
  std::size_t stable_dim = 0;
};

/// Lie derived series of u(L) starting from all of u(L).
DerivedSeries lie_derived_series(const EnvAlgebra& u, Backend backend = Backend::Auto, std::size_t max_steps = 64);
/// Lie derived series starting from span(start).
DerivedSeries lie_derived_series(const EnvAlgebra& u, const std::vector<EnvElement>& start,
                                 Backend backend = Backend::Auto, std::size_t max_steps = 64);

struct SzResult {
  bool nilpotent = false;
  std::size_t index = 0;               // least m with J^m = 0
  std::size_t ideal_dim = 0;
  std::vector<std::size_t> power_dims;  // dim J, dim J^2, ...
  EnvElement witness;                   // nonzero element of a stable power when not nilpotent
};

/// Associative nilpotency of the two-sided ideal generated by [[R,R],[R,R]],R], R = u(L).
SzResult sz_nilpotency(const EnvAlgebra& u, Backend backend = Backend::Auto);

/// Span of {[a, b]} inside u(L) coordinates (ambient dim u(L)).
Subspace env_bracket_span(const EnvAlgebra& u, const Subspace& a, const Subspace& b);

struct ReducednessReport {
  bool structural = false;           // nilpotent part of the torus decomposition is 0
  std::optional<bool> exact;         // stable kernel of Frobenius on u(L) is 0
  bool sample_found_nilpotent = false;
  std::size_t samples = 0;
};

/// u(L) reduced for abelian L over GF(2^k).
ReducednessReport reducedness_check(const RestrictedLieAlgebra& l, std::uint64_t seed = 1);

struct CertificateCheck {
  std::string name;
  bool passed = false;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  bool ok() const;
  std::string to_string() const;
};

/// Explicit solvable filtration of u(L) for class-2 L with dim L/Z(L) <= 3.
CertificateReport cond_ii_certificate(const RestrictedLieAlgebra& l);

struct EmbeddingReport {
  bool ok = false;
  std::size_t pairs_checked = 0;
  std::vector<std::string> generator_matrices;
};

/// Right-regular representation of u(L) on the free left u(A)-module u(A) ⊕ u(A)y.
EmbeddingReport m2_embedding_check(const RestrictedLieAlgebra& l, const Subspace& a, std::size_t pairs = 50,
                                   std::uint64_t seed = 7);

}  // namespace u2
