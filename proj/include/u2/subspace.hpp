#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "u2/matrix.hpp"

namespace u2 {

/// Subspace of F^n held in canonical reduced row echelon form, so equality is
/// row-by-row comparison.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : field_(std::move(f)), ambient_(ambient) {}

  static Subspace zero(const Field& f, std::size_t n) { return {f, n}; }
  static Subspace full(const Field& f, std::size_t n);
  static Subspace span(const Field& f, std::size_t n, std::vector<Vec> vectors);
  /// Same as span() but never takes the GF(2) word-packed path.
  static Subspace span_generic(const Field& f, std::size_t n, std::vector<Vec> vectors);

  const Field& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its component along this subspace (zero at every pivot column).
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  /// Coordinates of v in basis(); throws NotASubspace if v is outside.
  Vec coordinates(const Vec& v) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace map(const Embedding& e) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }
  std::string to_string() const;

 private:
  void check_compatible(const Subspace& o) const;
  Field field_;
  std::size_t ambient_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Coordinates on total/sub along a complement taken from total's basis.
class Quotient {
 public:
  Quotient(const Subspace& total, const Subspace& sub);

  std::size_t dim() const { return complement_.dim(); }
  const Subspace& total() const { return total_; }
  const Subspace& sub() const { return sub_; }
  /// RREF complement whose rows are the lifted representatives.
  const std::vector<Vec>& lifts() const { return complement_.basis(); }
  Vec project(const Vec& v) const;
  Vec lift(const Vec& w) const;

 private:
  Subspace total_;
  Subspace sub_;
  Subspace complement_;
};

Quotient quotient_coords(const Subspace& total, const Subspace& sub);

/// Word-packed GF(2) elimination. Rows are bit vectors of length `cols`;
/// output is the RREF (zero rows dropped) and pivot columns.
struct BitRref {
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> pivots;
};
BitRref rref_gf2(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols);

}  // namespace u2
