#include "u2/resla.hpp"

#include <sstream>

#include "u2/error.hpp"

namespace u2 {

namespace {

const char* kind_name(AxiomKind k) {
  switch (k) {
    case AxiomKind::Alternating: return "alternating";
    case AxiomKind::Jacobi: return "jacobi";
    case AxiomKind::Restrictedness: return "restrictedness";
  }
  return "?";
}

std::string coeff_text(const Field& f, const Scalar& c) {
  std::string s = f.format(c);
  if (!f.is_finite() && s.find_first_of("+/") != std::string::npos && s.front() != '(') s = "(" + s + ")";
  return s;
}

}  // namespace

std::string AxiomReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << kind_name(v.kind) << " violation at (" << v.i;
    if (v.kind != AxiomKind::Restrictedness) os << ", " << v.j;
    if (v.kind == AxiomKind::Jacobi) os << ", " << v.k;
    os << ")";
    if (!v.detail.empty()) os << ": " << v.detail;
    os << "\n";
  }
  return os.str();
}

LieAlgebra::LieAlgebra(Field f, std::size_t n, std::vector<std::string> names)
    : field_(std::move(f)), n_(n), table_(n * n, zero_vec(n)) {
  set_names(std::move(names));
}

void LieAlgebra::set_names(std::vector<std::string> names) {
  if (names.empty()) {
    for (std::size_t i = 0; i < n_; ++i) names.push_back("b" + std::to_string(i));
  }
  if (names.size() != n_) throw Error(ErrorCode::DimensionMismatch, "name count differs from dimension");
  names_ = std::move(names);
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, Vec value) {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::IndexOutOfRange, "bracket index out of range");
  if (value.size() != n_) throw Error(ErrorCode::DimensionMismatch, "bracket value has wrong length");
  if (i == j) {
    if (!is_zero(value)) throw Error(ErrorCode::AxiomViolation, "[b_i, b_i] must vanish");
    return;
  }
  table_[i * n_ + j] = value;
  table_[j * n_ + i] = std::move(value);
}

Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
  Vec r = zero();
  for (std::size_t i = 0; i < n_; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j || v[j].is_zero()) continue;
      const Vec& b = table_[i * n_ + j];
      if (!u2::is_zero(b)) axpy(field_, field_.mul(u[i], v[j]), b, r);
    }
  }
  return r;
}

Matrix LieAlgebra::ad(const Vec& v) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n_; ++j) cols.push_back(bracket(v, basis_vec(j)));
  return Matrix::from_columns(field_, n_, cols);
}

Subspace LieAlgebra::bracket_span(const Subspace& a, const Subspace& b) const {
  std::vector<Vec> out;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) {
      Vec c = bracket(x, y);
      if (!u2::is_zero(c)) out.push_back(std::move(c));
    }
  return span(std::move(out));
}

std::vector<Subspace> LieAlgebra::series(Series kind) const {
  std::vector<Subspace> out;
  if (kind == Series::UpperCentral) {
    out.push_back(Subspace::zero(field_, n_));
    for (;;) {
      Subspace next = centralizer_mod(whole(), out.back());
      if (next == out.back()) break;
      out.push_back(std::move(next));
    }
    return out;
  }
  out.push_back(whole());
  for (;;) {
    Subspace next = kind == Series::Derived ? bracket_span(out.back(), out.back()) : bracket_span(out.back(), whole());
    if (next == out.back()) break;
    const bool done = next.is_zero();
    out.push_back(std::move(next));
    if (done) break;
  }
  return out;
}

Subspace LieAlgebra::centralizer_mod(const Subspace& s, const Subspace& w) const {
  const Quotient q(whole(), w);
  // Rows: the quotient coordinates of [x, s] for each s, as linear forms in x.
  std::vector<Vec> rows;
  for (const auto& sv : s.basis()) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n_; ++j) cols.push_back(q.project(bracket(basis_vec(j), sv)));
    const Matrix m = Matrix::from_columns(field_, q.dim(), cols);
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  }
  return span(Matrix::from_rows(field_, n_, rows).nullspace());
}

Subspace LieAlgebra::centralizer(const Subspace& s) const { return centralizer_mod(s, Subspace::zero(field_, n_)); }

Subspace LieAlgebra::ideal_closure(const std::vector<Vec>& gens) const {
  Subspace cur = span(gens);
  for (;;) {
    std::vector<Vec> more = cur.basis();
    for (const auto& v : cur.basis())
      for (std::size_t i = 0; i < n_; ++i) more.push_back(bracket(basis_vec(i), v));
    Subspace next = span(std::move(more));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

bool LieAlgebra::is_ideal(const Subspace& s) const { return s.contains(bracket_span(s, whole())); }

AxiomReport LieAlgebra::check_lie_axioms() const {
  AxiomReport rep;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!u2::is_zero(table_[i * n_ + i]))
      rep.violations.push_back({AxiomKind::Alternating, i, i, 0, "[b_i, b_i] != 0"});
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!(table_[i * n_ + j] == table_[j * n_ + i]))
        rep.violations.push_back({AxiomKind::Alternating, i, j, 0, "[b_i, b_j] != [b_j, b_i]"});
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t k = j + 1; k < n_; ++k) {
        Vec s = bracket(bracket_basis(i, j), basis_vec(k));
        s = add(field_, s, bracket(bracket_basis(j, k), basis_vec(i)));
        s = add(field_, s, bracket(bracket_basis(k, i), basis_vec(j)));
        if (!u2::is_zero(s))
          rep.violations.push_back({AxiomKind::Jacobi, i, j, k,
                                    "cyclic sum at (" + names_[i] + ", " + names_[j] + ", " + names_[k] + ") is " + format(s)});
      }
  return rep;
}

std::string LieAlgebra::format(const Vec& v) const {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < n_; ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (!(v[i] == field_.one())) s += coeff_text(field_, v[i]) + "*";
    s += names_[i];
  }
  return s.empty() ? "0" : s;
}

RestrictedLieAlgebra::RestrictedLieAlgebra(Field f, std::size_t n, std::vector<std::string> names)
    : LieAlgebra(std::move(f), n, std::move(names)), pmap_(n, zero_vec(n)) {}

RestrictedLieAlgebra::RestrictedLieAlgebra(const LieAlgebra& base, std::vector<Vec> pmap)
    : LieAlgebra(base), pmap_(std::move(pmap)) {
  if (pmap_.size() != n_) throw Error(ErrorCode::DimensionMismatch, "pmap count differs from dimension");
  for (const auto& p : pmap_)
    if (p.size() != n_) throw Error(ErrorCode::DimensionMismatch, "pmap value has wrong length");
}

void RestrictedLieAlgebra::set_pmap(std::size_t i, Vec value) {
  if (i >= n_) throw Error(ErrorCode::IndexOutOfRange, "pmap index out of range");
  if (value.size() != n_) throw Error(ErrorCode::DimensionMismatch, "pmap value has wrong length");
  pmap_[i] = std::move(value);
}

Vec RestrictedLieAlgebra::pmap_eval(const Vec& v) const {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
  Vec r = zero();
  for (std::size_t i = 0; i < n_; ++i) {
    if (v[i].is_zero()) continue;
    axpy(field_, field_.square(v[i]), pmap_[i], r);
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (v[j].is_zero()) continue;
      const Vec& b = table_[i * n_ + j];
      if (!u2::is_zero(b)) axpy(field_, field_.mul(v[i], v[j]), b, r);
    }
  }
  return r;
}

AxiomReport RestrictedLieAlgebra::check_axioms() const {
  AxiomReport rep = check_lie_axioms();
  for (std::size_t i = 0; i < n_; ++i) {
    const Matrix a = ad(basis_vec(i));
    if (!(ad(pmap_[i]) == a * a))
      rep.violations.push_back({AxiomKind::Restrictedness, i, 0, 0, "ad(" + names_[i] + "^[2]) != ad(" + names_[i] + ")^2"});
  }
  return rep;
}

RestrictedIdeal RestrictedLieAlgebra::restricted_closure(const std::vector<Vec>& gens) const {
  Subspace cur = span(gens);
  for (;;) {
    std::vector<Vec> more = cur.basis();
    for (const auto& v : cur.basis()) {
      for (std::size_t i = 0; i < n_; ++i) more.push_back(bracket(basis_vec(i), v));
      more.push_back(pmap_eval(v));
    }
    Subspace next = span(std::move(more));
    if (next == cur) break;
    cur = std::move(next);
  }
  return {cur, true, true};
}

bool RestrictedLieAlgebra::is_restricted_ideal(const Subspace& s) const {
  if (!is_ideal(s)) return false;
  for (const auto& v : s.basis())
    if (!s.contains(pmap_eval(v))) return false;
  return true;
}

NilpotencyResult RestrictedLieAlgebra::is_2nilpotent(const Vec& v) const {
  Vec x = v;
  for (std::size_t step = 0; step <= n_ + 1; ++step) {
    if (u2::is_zero(x)) return {true, step, {}};
    x = pmap_eval(x);
  }
  return {false, n_ + 1, {}};
}

NilpotencyResult RestrictedLieAlgebra::is_2nilpotent(const Subspace& ideal) const {
  NilpotencyResult res;
  res.chain.push_back(ideal);
  while (!res.chain.back().is_zero()) {
    const Subspace& cur = res.chain.back();
    Subspace next = bracket_span(cur, ideal);
    std::vector<Vec> squares = next.basis();
    for (const auto& v : cur.basis()) squares.push_back(pmap_eval(v));
    next = span(std::move(squares));
    if (next == cur) {
      res.nilpotent = false;
      res.steps = res.chain.size();
      return res;
    }
    res.chain.push_back(std::move(next));
  }
  res.nilpotent = true;
  res.steps = res.chain.size() - 1;
  return res;
}

bool RestrictedLieAlgebra::is_2abelian(const Subspace& ideal) const {
  const Subspace d = bracket_span(ideal, ideal);
  // The derived subalgebra of an ideal is an ideal of the ideal; its chain is
  // taken inside the restricted subalgebra generated by the ideal.
  const RestrictedLieAlgebra sub = subalgebra(ideal);
  std::vector<Vec> coords;
  for (const auto& v : d.basis()) coords.push_back(ideal.coordinates(v));
  const Subspace dsub = sub.restricted_closure(coords).space;
  return sub.is_2nilpotent(dsub).nilpotent;
}

Subspace semilinear_kernel(const Field& f, std::size_t ambient, const std::vector<Vec>& w,
                           const std::vector<Vec>& images, unsigned m) {
  if (!f.is_finite()) throw Error(ErrorCode::UnsupportedField, "semilinear kernels need a perfect field");
  if (w.empty()) return Subspace::zero(f, ambient);
  const Matrix a = Matrix::from_columns(f, images.front().size(), images);
  std::vector<Vec> out;
  for (Vec beta : a.nullspace()) {
    for (auto& b : beta)
      for (unsigned r = 0; r < m; ++r) b = *f.sqrt(b);
    Vec v = zero_vec(ambient);
    for (std::size_t i = 0; i < w.size(); ++i) axpy(f, beta[i], w[i], v);
    out.push_back(std::move(v));
  }
  return Subspace::span(f, ambient, std::move(out));
}

Subspace RestrictedLieAlgebra::nilpotent_locus(const Subspace& w) const {
  if (!field_.is_finite()) throw Error(ErrorCode::UnsupportedField, "nilpotent locus over F2(X,Y)");
  if (!is_abelian(w)) throw Error(ErrorCode::NotAbelian, "nilpotent locus needs an abelian subspace");
  const std::vector<Vec>& basis = w.basis();
  std::vector<Vec> images = basis;
  Subspace prev = Subspace::zero(field_, n_);
  for (unsigned m = 1; m <= n_ + 1; ++m) {
    for (auto& im : images) im = pmap_eval(im);
    Subspace k = semilinear_kernel(field_, n_, basis, images, m);
    if (k == prev && m > 1) return k;
    prev = std::move(k);
  }
  return prev;
}

std::pair<Subspace, Subspace> RestrictedLieAlgebra::torus_decomposition() const {
  if (!is_abelian()) throw Error(ErrorCode::NotAbelian, "torus decomposition needs an abelian algebra");
  if (!field_.is_finite()) throw Error(ErrorCode::UnsupportedField, "torus decomposition over F2(X,Y)");
  Subspace image = whole();
  for (;;) {
    std::vector<Vec> im;
    for (const auto& v : image.basis()) im.push_back(pmap_eval(v));
    Subspace next = span(std::move(im));
    if (next == image) break;
    image = std::move(next);
  }
  return {image, nilpotent_locus(whole())};
}

RestrictedLieAlgebra::QuotientAlgebra RestrictedLieAlgebra::quotient(const Subspace& ideal) const {
  if (!is_restricted_ideal(ideal)) throw Error(ErrorCode::NotAnIdeal, "quotient by a subspace that is not a restricted ideal");
  Quotient q(whole(), ideal);
  const std::size_t d = q.dim();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) {
    const Vec& lift = q.lifts()[i];
    std::size_t piv = 0;
    while (lift[piv].is_zero()) ++piv;
    names.push_back(names_[piv]);
  }
  RestrictedLieAlgebra out(field_, d, names);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) out.set_bracket(i, j, q.project(bracket(q.lifts()[i], q.lifts()[j])));
    out.set_pmap(i, q.project(pmap_eval(q.lifts()[i])));
  }
  return {std::move(out), std::move(q)};
}

RestrictedLieAlgebra RestrictedLieAlgebra::base_change(const Embedding& e) const {
  if (!(e.source() == field_)) throw Error(ErrorCode::FieldMismatch, "embedding source differs from the algebra's field");
  auto map_vec = [&e](const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = e(v[i]);
    return r;
  };
  RestrictedLieAlgebra out(e.target(), n_, names_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.set_bracket(i, j, map_vec(bracket_basis(i, j)));
    out.set_pmap(i, map_vec(pmap_[i]));
  }
  return out;
}

RestrictedLieAlgebra RestrictedLieAlgebra::direct_sum(const RestrictedLieAlgebra& o) const {
  if (!(o.field_ == field_)) throw Error(ErrorCode::FieldMismatch, "direct sum of algebras over different fields");
  const std::size_t n = n_ + o.n_;
  std::vector<std::string> names = names_;
  names.insert(names.end(), o.names_.begin(), o.names_.end());
  RestrictedLieAlgebra out(field_, n, names);
  auto embed = [n](const Vec& v, std::size_t off) {
    Vec r = zero_vec(n);
    for (std::size_t i = 0; i < v.size(); ++i) r[off + i] = v[i];
    return r;
  };
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.set_bracket(i, j, embed(bracket_basis(i, j), 0));
    out.set_pmap(i, embed(pmap_[i], 0));
  }
  for (std::size_t i = 0; i < o.n_; ++i) {
    for (std::size_t j = i + 1; j < o.n_; ++j) out.set_bracket(n_ + i, n_ + j, embed(o.bracket_basis(i, j), n_));
    out.set_pmap(n_ + i, embed(o.pmap_[i], n_));
  }
  return out;
}

RestrictedLieAlgebra RestrictedLieAlgebra::change_basis(const Matrix& p) const {
  if (p.rows() != n_ || p.cols() != n_) throw Error(ErrorCode::DimensionMismatch, "basis change matrix has wrong shape");
  if (p.rank() != n_) throw Error(ErrorCode::BadParameters, "basis change matrix is singular");
  auto to_new = [&](const Vec& v) { return *solve(p, v); };
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n_; ++j) cols.push_back(p.column(j));
  RestrictedLieAlgebra out(field_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.set_bracket(i, j, to_new(bracket(cols[i], cols[j])));
    out.set_pmap(i, to_new(pmap_eval(cols[i])));
  }
  return out;
}

RestrictedLieAlgebra RestrictedLieAlgebra::subalgebra(const Subspace& s) const {
  const std::size_t d = s.dim();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back(names_[s.pivots()[i]]);
  RestrictedLieAlgebra out(field_, d, names);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) out.set_bracket(i, j, s.coordinates(bracket(s.basis()[i], s.basis()[j])));
    out.set_pmap(i, s.coordinates(pmap_eval(s.basis()[i])));
  }
  return out;
}

}  // namespace u2
