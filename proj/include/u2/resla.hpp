#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "u2/subspace.hpp"

namespace u2 {

enum class AxiomKind { Alternating, Jacobi, Restrictedness };

struct AxiomViolation {
  AxiomKind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

enum class Series { Derived, LowerCentral, UpperCentral };

/// Lie algebra over a Field given by structure constants on a fixed basis.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(Field f, std::size_t n, std::vector<std::string> names = {});

  const Field& field() const { return field_; }
  std::size_t dim() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);

  /// Sets [b_i, b_j] and [b_j, b_i]; i == j is only allowed with a zero value.
  void set_bracket(std::size_t i, std::size_t j, Vec value);
  const Vec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  Vec bracket(const Vec& u, const Vec& v) const;
  /// Matrix of x -> [v, x].
  Matrix ad(const Vec& v) const;
  Vec basis_vec(std::size_t i) const { return unit_vec(field_, n_, i); }
  Vec zero() const { return zero_vec(n_); }
  Subspace whole() const { return Subspace::full(field_, n_); }
  Subspace span(std::vector<Vec> vs) const { return Subspace::span(field_, n_, std::move(vs)); }

  Subspace bracket_span(const Subspace& a, const Subspace& b) const;
  std::vector<Subspace> series(Series kind) const;
  Subspace derived() const { return bracket_span(whole(), whole()); }
  Subspace center() const { return centralizer(whole()); }
  Subspace centralizer(const Subspace& s) const;
  /// {x : [x, S] ⊆ W}.
  Subspace centralizer_mod(const Subspace& s, const Subspace& w) const;
  Subspace ideal_closure(const std::vector<Vec>& gens) const;
  bool is_ideal(const Subspace& s) const;
  bool is_abelian() const { return derived().is_zero(); }
  bool is_abelian(const Subspace& s) const { return bracket_span(s, s).is_zero(); }

  /// Alternating and Jacobi checks only.
  AxiomReport check_lie_axioms() const;

  std::string format(const Vec& v) const;

 protected:
  Field field_;
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<Vec> table_;
};

struct RestrictedIdeal {
  Subspace space;
  bool closed_under_bracket = false;
  bool closed_under_pmap = false;
};

struct NilpotencyResult {
  bool nilpotent = false;
  /// Element mode: number of squarings to reach 0. Ideal mode: chain length.
  std::size_t steps = 0;
  std::vector<Subspace> chain;
};

/// Restricted Lie algebra in characteristic 2: adds the 2-power map on basis vectors.
class RestrictedLieAlgebra : public LieAlgebra {
 public:
  RestrictedLieAlgebra() = default;
  RestrictedLieAlgebra(Field f, std::size_t n, std::vector<std::string> names = {});
  RestrictedLieAlgebra(const LieAlgebra& base, std::vector<Vec> pmap);

  void set_pmap(std::size_t i, Vec value);
  const Vec& pmap(std::size_t i) const { return pmap_[i]; }
  /// (sum a_i b_i)^[2] = sum a_i^2 b_i^[2] + sum_{i<j} a_i a_j [b_i, b_j].
  Vec pmap_eval(const Vec& v) const;

  AxiomReport check_axioms() const;

  RestrictedIdeal restricted_closure(const std::vector<Vec>& gens) const;
  bool is_restricted_ideal(const Subspace& s) const;
  NilpotencyResult is_2nilpotent(const Vec& v) const;
  NilpotencyResult is_2nilpotent(const Subspace& ideal) const;
  bool is_2abelian(const Subspace& ideal) const;

  /// L = T ⊕ N for abelian L over GF(2^k); returns {T, N}.
  std::pair<Subspace, Subspace> torus_decomposition() const;
  /// Stable kernel of the squaring map on an abelian, pmap-closed subspace W (e.g. the center).
  Subspace nilpotent_locus(const Subspace& w) const;

  /// Algebra structure on L/I, with the coordinate data used to build it.
  struct QuotientAlgebra;
  QuotientAlgebra quotient(const Subspace& ideal) const;
  RestrictedLieAlgebra base_change(const Embedding& e) const;
  RestrictedLieAlgebra direct_sum(const RestrictedLieAlgebra& o) const;
  /// New basis b'_j = sum_i P(i, j) b_i; P must be invertible.
  RestrictedLieAlgebra change_basis(const Matrix& p) const;
  /// Restricted subalgebra on the basis of `s`, in the coordinates of s.basis().
  RestrictedLieAlgebra subalgebra(const Subspace& s) const;

 private:
  std::vector<Vec> pmap_;
};

struct RestrictedLieAlgebra::QuotientAlgebra {
  RestrictedLieAlgebra algebra;
  Quotient coords;
};

/// Kernel of a 2^m-semilinear map: images[i] = sigma^m(w_i); returns the
/// subspace of sum a_i w_i with sum a_i^(2^m) images[i] = 0. GF(2^k) only.
Subspace semilinear_kernel(const Field& f, std::size_t ambient, const std::vector<Vec>& w,
                           const std::vector<Vec>& images, unsigned m);

}  // namespace u2
