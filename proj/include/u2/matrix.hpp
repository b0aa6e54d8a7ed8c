#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "u2/field.hpp"

namespace u2 {

using Vec = std::vector<Scalar>;

Vec zero_vec(std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec add(const Field& f, const Vec& a, const Vec& b);
Vec scale(const Field& f, const Scalar& c, const Vec& v);
/// y += c * x
void axpy(const Field& f, const Scalar& c, const Vec& x, Vec& y);
std::string format(const Field& f, const Vec& v);

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Vec apply(const Vec& v) const;  // M v
  Matrix transpose() const;
  Matrix power(unsigned e) const;
  Matrix map(const Embedding& e) const;

  bool is_zero() const;
  bool is_nilpotent() const;
  std::size_t rank() const;
  /// Basis of {x : M x = 0}.
  std::vector<Vec> nullspace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

/// A particular solution of M x = b, if one exists.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// In-place reduced row echelon form; returns pivot columns. Zero rows are dropped.
std::vector<std::size_t> rref(const Field& f, std::vector<Vec>& rows, std::size_t cols);

}  // namespace u2
