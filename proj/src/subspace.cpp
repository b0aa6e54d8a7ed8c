#include "u2/subspace.hpp"

#include <bit>

#include "u2/error.hpp"

namespace u2 {

namespace {

bool is_gf2(const Field& f) { return f.is_finite() && f.degree() == 1; }

std::size_t words_for(std::size_t cols) { return (cols + 63) / 64; }

}  // namespace

BitRref rref_gf2(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols) {
  BitRref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t p = r;
    while (p < rows.size() && !(rows[p][w] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i][w] & bit)) {
        for (std::size_t k = w; k < rows[i].size(); ++k) rows[i][k] ^= rows[r][k];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

Subspace Subspace::full(const Field& f, std::size_t n) {
  Subspace s(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    s.rows_.push_back(unit_vec(f, n, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span_generic(const Field& f, std::size_t n, std::vector<Vec> vectors) {
  for (const auto& v : vectors)
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  Subspace s(f, n);
  s.pivots_ = rref(f, vectors, n);
  s.rows_ = std::move(vectors);
  return s;
}

Subspace Subspace::span(const Field& f, std::size_t n, std::vector<Vec> vectors) {
  if (!is_gf2(f)) return span_generic(f, n, std::move(vectors));
  const std::size_t nw = words_for(n);
  std::vector<std::vector<std::uint64_t>> packed;
  packed.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
    std::vector<std::uint64_t> row(nw, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (v[i].bits() & 1u) row[i / 64] |= std::uint64_t{1} << (i % 64);
    packed.push_back(std::move(row));
  }
  BitRref e = rref_gf2(std::move(packed), n);
  Subspace s(f, n);
  s.pivots_ = std::move(e.pivots);
  for (const auto& row : e.rows) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((row[i / 64] >> (i % 64)) & 1u) v[i] = f.one();
    s.rows_.push_back(std::move(v));
  }
  return s;
}

void Subspace::check_compatible(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
  if (!(field_ == o.field_)) throw Error(ErrorCode::FieldMismatch, "subspaces over different fields");
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (!c.is_zero()) axpy(field_, c, rows_[i], r);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return u2::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  check_compatible(o);
  for (const auto& v : o.rows_)
    if (!contains(v)) return false;
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw Error(ErrorCode::NotASubspace, "vector is not in the subspace");
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::sum(const Subspace& o) const {
  check_compatible(o);
  std::vector<Vec> all = rows_;
  all.insert(all.end(), o.rows_.begin(), o.rows_.end());
  return span(field_, ambient_, std::move(all));
}

Subspace Subspace::intersect(const Subspace& o) const {
  check_compatible(o);
  // Zassenhaus: rows [a | a] and [b | 0]; rows with zero left half span the intersection.
  std::vector<Vec> block;
  for (const auto& a : rows_) {
    Vec r = a;
    r.insert(r.end(), a.begin(), a.end());
    block.push_back(std::move(r));
  }
  for (const auto& b : o.rows_) {
    Vec r = b;
    r.resize(2 * ambient_);
    block.push_back(std::move(r));
  }
  const Subspace e = span(field_, 2 * ambient_, std::move(block));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (e.pivots_[i] < ambient_) continue;
    out.emplace_back(e.rows_[i].begin() + static_cast<std::ptrdiff_t>(ambient_), e.rows_[i].end());
  }
  return span(field_, ambient_, std::move(out));
}

Subspace Subspace::map(const Embedding& e) const {
  std::vector<Vec> rs;
  for (const auto& r : rows_) {
    Vec m(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) m[i] = e(r[i]);
    rs.push_back(std::move(m));
  }
  return span(e.target(), ambient_, std::move(rs));
}

std::string Subspace::to_string() const {
  std::string s = "dim " + std::to_string(dim()) + " in " + std::to_string(ambient_) + "\n";
  for (const auto& r : rows_) s += format(field_, r) + "\n";
  return s;
}

Quotient::Quotient(const Subspace& total, const Subspace& sub) : total_(total), sub_(sub) {
  if (!total.contains(sub)) throw Error(ErrorCode::NotASubspace, "quotient by a subspace that is not contained");
  std::vector<Vec> reduced;
  for (const auto& v : total.basis()) reduced.push_back(sub.reduce(v));
  complement_ = Subspace::span(total.field(), total.ambient(), std::move(reduced));
}

Vec Quotient::project(const Vec& v) const {
  const Vec r = sub_.reduce(v);
  Vec w(complement_.dim());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = r[complement_.pivots()[i]];
  return w;
}

Vec Quotient::lift(const Vec& w) const {
  if (w.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "quotient coordinate length mismatch");
  Vec v(total_.ambient());
  for (std::size_t i = 0; i < w.size(); ++i) axpy(total_.field(), w[i], complement_.basis()[i], v);
  return v;
}

Quotient quotient_coords(const Subspace& total, const Subspace& sub) { return {total, sub}; }

}  // namespace u2
