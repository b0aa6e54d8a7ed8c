#include "u2/matrix.hpp"

#include "u2/error.hpp"

namespace u2 {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = f.one();
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vec add(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector lengths differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec scale(const Field& f, const Scalar& c, const Vec& v) {
  Vec r(v.size());
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.mul(c, v[i]);
  return r;
}

void axpy(const Field& f, const Scalar& c, const Vec& x, Vec& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "vector lengths differ");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i] = f.add(y[i], f.mul(c, x[i]));
  }
}

std::string format(const Field& f, const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += f.format(v[i]);
  }
  return s + ")";
}

std::vector<std::size_t> rref(const Field& f, std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Scalar inv = f.inv(rows[r][c]);
    if (!(inv == f.one())) rows[r] = scale(f, inv, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Scalar coef = rows[i][c];
      axpy(f, coef, rows[r], rows[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix m(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o.at(k, j).is_zero()) m.at(i, j) = field_.add(m.at(i, j), field_.mul(a, o.at(k, j)));
      }
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  Matrix m(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.add(data_[i], o.data_[i]);
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!v[j].is_zero() && !at(i, j).is_zero()) r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::power(unsigned e) const {
  Matrix r = identity(field_, rows_);
  Matrix b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Matrix Matrix::map(const Embedding& e) const {
  Matrix m(e.target(), rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = e(data_[i]);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_nilpotent() const {
  if (rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "nilpotency of a non-square matrix");
  return power(static_cast<unsigned>(rows_)).is_zero();
}

std::size_t Matrix::rank() const {
  std::vector<Vec> rs;
  for (std::size_t r = 0; r < rows_; ++r) rs.push_back(row(r));
  return rref(field_, rs, cols_).size();
}

std::vector<Vec> Matrix::nullspace() const {
  std::vector<Vec> rs;
  for (std::size_t r = 0; r < rows_; ++r) rs.push_back(row(r));
  const auto piv = rref(field_, rs, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols_);
    x[free] = field_.one();
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = rs[i][free];  // -a = a in char 2
    out.push_back(std::move(x));
  }
  return out;
}

std::string Matrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) s += format(field_, row(r)) + "\n";
  return s;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length mismatch");
  const Field& f = m.field();
  const std::size_t n = m.cols();
  std::vector<Vec> rs;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vec row = m.row(r);
    row.push_back(b[r]);
    rs.push_back(std::move(row));
  }
  const auto piv = rref(f, rs, n + 1);
  Vec x(n);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == n) return std::nullopt;
    x[piv[i]] = rs[i][n];
  }
  return x;
}

}  // namespace u2
