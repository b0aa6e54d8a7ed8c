#include "u2/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>

#include "u2/error.hpp"

#ifdef U2_HAVE_OPENMP
#include <omp.h>
#endif

namespace u2::kernels {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// GF(2): coordinates packed 64 per word.
struct Gf2Ops {
  using T = std::uint64_t;

  std::size_t len(std::size_t n) const { return (n + 63) / 64; }
  unsigned get(const T* v, std::size_t i) const { return static_cast<unsigned>((v[i >> 6] >> (i & 63)) & 1u); }
  void set(T* v, std::size_t i, unsigned c) const {
    const T bit = T{1} << (i & 63);
    v[i >> 6] = c ? (v[i >> 6] | bit) : (v[i >> 6] & ~bit);
  }
  void axpy(unsigned c, const T* x, T* y, std::size_t l) const {
    if (!c) return;
    for (std::size_t k = 0; k < l; ++k) y[k] ^= x[k];
  }
  void scale(unsigned, T*, std::size_t) const {}
  unsigned inv(unsigned c) const { return c; }
  std::size_t next_nonzero(const T* v, std::size_t from, std::size_t n) const {
    const std::size_t l = len(n);
    std::size_t w = from >> 6;
    if (w >= l) return npos;
    T cur = v[w] & (~T{0} << (from & 63));
    for (;;) {
      if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w >= l) return npos;
      cur = v[w];
    }
  }
  template <class F>
  void for_each_nonzero(const T* v, std::size_t l, F&& f) const {
    for (std::size_t w = 0; w < l; ++w)
      for (T cur = v[w]; cur; cur &= cur - 1) f((w << 6) + static_cast<std::size_t>(std::countr_zero(cur)), 1u);
  }
};

/// GF(2^k), k <= 8: one byte per coordinate, full multiplication table.
struct ByteOps {
  using T = std::uint8_t;

  explicit ByteOps(const Field& f) : mul(256 * 256), inverse(256) {
    const std::size_t q = std::size_t{1} << f.degree();
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        mul[a * 256 + b] = static_cast<T>(f.mul(Scalar::from_bits(a), Scalar::from_bits(b)).bits());
    for (std::size_t a = 1; a < q; ++a) inverse[a] = static_cast<T>(f.inv(Scalar::from_bits(a)).bits());
  }

  std::size_t len(std::size_t n) const { return n; }
  unsigned get(const T* v, std::size_t i) const { return v[i]; }
  void set(T* v, std::size_t i, unsigned c) const { v[i] = static_cast<T>(c); }
  void axpy(unsigned c, const T* x, T* y, std::size_t l) const {
    if (!c) return;
    if (c == 1) {
      for (std::size_t k = 0; k < l; ++k) y[k] ^= x[k];
      return;
    }
    const T* row = &mul[c * 256];
    for (std::size_t k = 0; k < l; ++k) y[k] ^= row[x[k]];
  }
  void scale(unsigned c, T* v, std::size_t l) const {
    const T* row = &mul[c * 256];
    for (std::size_t k = 0; k < l; ++k) v[k] = row[v[k]];
  }
  unsigned inv(unsigned c) const { return inverse[c]; }
  std::size_t next_nonzero(const T* v, std::size_t from, std::size_t n) const {
    for (std::size_t k = from; k < n; ++k)
      if (v[k]) return k;
    return npos;
  }
  template <class F>
  void for_each_nonzero(const T* v, std::size_t l, F&& f) const {
    for (std::size_t k = 0; k < l; ++k)
      if (v[k]) f(k, v[k]);
  }

  std::vector<T> mul;
  std::vector<T> inverse;
};

/// Row-reduced set of dense vectors; rows keep their leading coordinate equal to 1.
template <class Ops>
class Echelon {
 public:
  using T = typename Ops::T;

  Echelon(const Ops& ops, std::size_t n) : ops_(&ops), n_(n), len_(ops.len(n)), row_at_(n, npos) {}

  std::size_t dim() const { return pivots_.size(); }
  std::size_t len() const { return len_; }
  const T* row(std::size_t i) const { return &data_[i * len_]; }

  /// Reduces v in place; returns true if it was independent and has been stored.
  bool insert(T* v) {
    std::size_t p = ops_->next_nonzero(v, 0, n_);
    while (p != npos) {
      const std::size_t r = row_at_[p];
      if (r == npos) break;
      ops_->axpy(ops_->get(v, p), row(r), v, len_);
      p = ops_->next_nonzero(v, p + 1, n_);
    }
    if (p == npos) return false;
    const unsigned c = ops_->get(v, p);
    if (c != 1) ops_->scale(ops_->inv(c), v, len_);
    row_at_[p] = pivots_.size();
    pivots_.push_back(p);
    data_.insert(data_.end(), v, v + len_);
    return true;
  }

  bool insert_copy(const T* v) {
    std::vector<T> tmp(v, v + len_);
    return insert(tmp.data());
  }

  /// Reduced row echelon form with rows sorted by pivot.
  void finalize() {
    std::vector<std::size_t> order(pivots_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<T> data(data_.size());
    std::vector<std::size_t> piv(pivots_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::copy_n(&data_[order[i] * len_], len_, &data[i * len_]);
      piv[i] = pivots_[order[i]];
    }
    data_ = std::move(data);
    pivots_ = std::move(piv);
    for (std::size_t i = 0; i < pivots_.size(); ++i) row_at_[pivots_[i]] = i;
    for (std::size_t i = pivots_.size(); i-- > 0;)
      for (std::size_t r = 0; r < i; ++r)
        ops_->axpy(ops_->get(&data_[r * len_], pivots_[i]), &data_[i * len_], &data_[r * len_], len_);
  }

  friend bool operator==(const Echelon& a, const Echelon& b) { return a.pivots_ == b.pivots_ && a.data_ == b.data_; }

 private:
  const Ops* ops_;
  std::size_t n_;
  std::size_t len_;
  std::vector<std::size_t> row_at_;
  std::vector<std::size_t> pivots_;
  std::vector<T> data_;
};

/// Multiplication by generators of u(L) in dense form.
template <class Ops>
class DenseEnv {
 public:
  using T = typename Ops::T;

  DenseEnv(const EnvAlgebra& u, const Ops& ops)
      : u_(&u), ops_(ops), gens_(u.generators()), n_(u.dim()), len_(ops.len(n_)) {
    u.precompute();
    right_.assign(gens_ * n_ * len_, T{0});
    left_.assign(gens_ * n_ * len_, T{0});
    for (std::size_t j = 0; j < gens_; ++j)
      for (Mask m = 0; m < n_; ++m) {
        store(u.mono_times_gen(m, j), &right_[(j * n_ + m) * len_]);
        store(u.gen_mul(j, u.monomial(m)), &left_[(j * n_ + m) * len_]);
      }
  }

  const Ops& ops() const { return ops_; }
  std::size_t size() const { return n_; }
  std::size_t len() const { return len_; }

  void store(const EnvElement& e, T* out) const {
    std::fill_n(out, len_, T{0});
    for (const auto& [m, c] : e.terms) ops_.set(out, m, static_cast<unsigned>(c.bits()));
  }
  void store(const Vec& v, T* out) const {
    std::fill_n(out, len_, T{0});
    for (std::size_t i = 0; i < v.size(); ++i) ops_.set(out, i, static_cast<unsigned>(v[i].bits()));
  }
  EnvElement load(const T* v) const {
    EnvElement e;
    ops_.for_each_nonzero(v, len_, [&](std::size_t i, unsigned c) { e.terms.emplace(static_cast<Mask>(i), Scalar::from_bits(c)); });
    return e;
  }

  /// out = v * b_j
  void right_gen(const T* v, std::size_t j, T* out) const {
    std::fill_n(out, len_, T{0});
    const T* tab = &right_[j * n_ * len_];
    ops_.for_each_nonzero(v, len_, [&](std::size_t a, unsigned c) { ops_.axpy(c, tab + a * len_, out, len_); });
  }
  /// out = b_j * v
  void left_gen(std::size_t j, const T* v, T* out) const {
    std::fill_n(out, len_, T{0});
    const T* tab = &left_[j * n_ * len_];
    ops_.for_each_nonzero(v, len_, [&](std::size_t a, unsigned c) { ops_.axpy(c, tab + a * len_, out, len_); });
  }
  /// rows[b] = v * m_b for every monomial b.
  void right_all(const T* v, std::vector<T>& rows) const {
    rows.assign(n_ * len_, T{0});
    std::copy_n(v, len_, rows.data());
    for (std::size_t b = 1; b < n_; ++b) {
      const std::size_t t = 31 - static_cast<std::size_t>(std::countl_zero(static_cast<Mask>(b)));
      right_gen(&rows[(b ^ (std::size_t{1} << t)) * len_], t, &rows[b * len_]);
    }
  }
  /// rows[b] = [v, m_b].
  void ad_all(const T* v, std::vector<T>& rows, std::vector<T>& scratch) const {
    right_all(v, rows);
    scratch.assign(n_ * len_, T{0});
    std::copy_n(v, len_, scratch.data());
    for (std::size_t b = 1; b < n_; ++b) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(static_cast<Mask>(b)));
      left_gen(low, &scratch[(b & (b - 1)) * len_], &scratch[b * len_]);
    }
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k] ^= scratch[k];
  }
  /// out = sum_b w_b rows[b]
  void combine(const std::vector<T>& rows, const T* w, T* out) const {
    std::fill_n(out, len_, T{0});
    ops_.for_each_nonzero(w, len_, [&](std::size_t b, unsigned c) {
      if (b < n_) ops_.axpy(c, &rows[b * len_], out, len_);
    });
  }

 private:
  const EnvAlgebra* u_;
  const Ops& ops_;
  std::size_t gens_;
  std::size_t n_;
  std::size_t len_;
  std::vector<T> right_;
  std::vector<T> left_;
};

/// Computes span{f(i, j, out)} over index pairs, collected into one echelon.
/// `row_job(i, scratch)` prepares per-i state; `pair_job(i, j, out)` writes one vector.
template <class Ops, class Prepare, class Pair>
Echelon<Ops> pairwise_span(const DenseEnv<Ops>& env, std::size_t count_i, std::size_t count_j, bool upper_only,
                           bool parallel, Prepare&& prepare, Pair&& pair) {
  using T = typename Ops::T;
  const std::size_t n = env.size();
  const std::size_t len = env.len();
  Echelon<Ops> merged(env.ops(), n);
  int threads = 1;
#ifdef U2_HAVE_OPENMP
  if (parallel) threads = omp_get_max_threads();
#else
  (void)parallel;
#endif
  std::vector<Echelon<Ops>> locals(static_cast<std::size_t>(threads), Echelon<Ops>(env.ops(), n));
#ifdef U2_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
#endif
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(count_i); ++ii) {
    int tid = 0;
#ifdef U2_HAVE_OPENMP
    tid = omp_get_thread_num();
#endif
    const auto i = static_cast<std::size_t>(ii);
    std::vector<T> rows, scratch, out(len);
    prepare(i, rows, scratch);
    for (std::size_t j = upper_only ? i + 1 : 0; j < count_j; ++j) {
      pair(i, j, rows, out.data());
      locals[static_cast<std::size_t>(tid)].insert(out.data());
    }
  }
  for (auto& e : locals)
    for (std::size_t r = 0; r < e.dim(); ++r) merged.insert_copy(e.row(r));
  merged.finalize();
  return merged;
}

template <class Ops>
Echelon<Ops> bracket_step(const DenseEnv<Ops>& env, const Echelon<Ops>& d, bool parallel) {
  return pairwise_span(
      env, d.dim(), d.dim(), true, parallel,
      [&](std::size_t i, auto& rows, auto& scratch) { env.ad_all(d.row(i), rows, scratch); },
      [&](std::size_t, std::size_t j, const auto& rows, auto* out) { env.combine(rows, d.row(j), out); });
}

template <class Ops>
DerivedSeries run_series(const EnvAlgebra& u, const Ops& ops, const std::vector<Vec>& start, std::size_t max_steps,
                         bool parallel) {
  const DenseEnv<Ops> env(u, ops);
  Echelon<Ops> cur(ops, env.size());
  std::vector<typename Ops::T> buf(env.len());
  for (const auto& v : start) {
    env.store(v, buf.data());
    cur.insert(buf.data());
  }
  cur.finalize();
  DerivedSeries out;
  out.dims.push_back(cur.dim());
  if (cur.dim() == 0) {
    out.reached_zero = true;
    return out;
  }
  for (std::size_t step = 1; step <= max_steps; ++step) {
    Echelon<Ops> next = bracket_step(env, cur, parallel);
    if (next == cur) {
      out.length = step - 1;
      out.stable_dim = cur.dim();
      return out;
    }
    out.dims.push_back(next.dim());
    if (next.dim() == 0) {
      out.reached_zero = true;
      out.length = step;
      return out;
    }
    cur = std::move(next);
  }
  throw Error(ErrorCode::BudgetExceeded, "derived series did not settle within the step budget");
}

template <class Ops>
SzResult run_sz(const EnvAlgebra& u, const Ops& ops, bool parallel) {
  using T = typename Ops::T;
  const DenseEnv<Ops> env(u, ops);
  const std::size_t n = env.size();
  const std::size_t len = env.len();
  std::vector<T> buf(len);

  Echelon<Ops> all(ops, n);
  for (std::size_t m = 0; m < n; ++m) {
    std::fill(buf.begin(), buf.end(), T{0});
    ops.set(buf.data(), m, 1);
    all.insert(buf.data());
  }
  all.finalize();
  const Echelon<Ops> d1 = bracket_step(env, all, parallel);
  const Echelon<Ops> d2 = bracket_step(env, d1, parallel);
  // [d2, u(L)]: every row of ad(x) for x in a basis of d2.
  Echelon<Ops> ideal = pairwise_span(
      env, d2.dim(), n, false, parallel,
      [&](std::size_t i, auto& rows, auto& scratch) { env.ad_all(d2.row(i), rows, scratch); },
      [&](std::size_t, std::size_t b, const auto& rows, auto* out) { std::copy_n(&rows[b * len], len, out); });

  // Two-sided closure under generator multiplication.
  std::vector<std::vector<T>> work;
  for (std::size_t r = 0; r < ideal.dim(); ++r) work.emplace_back(ideal.row(r), ideal.row(r) + len);
  while (!work.empty()) {
    const std::vector<T> x = std::move(work.back());
    work.pop_back();
    for (std::size_t j = 0; j < u.generators(); ++j) {
      env.right_gen(x.data(), j, buf.data());
      std::vector<T> copy = buf;
      if (ideal.insert(buf.data())) work.push_back(std::move(copy));
      env.left_gen(j, x.data(), buf.data());
      copy = buf;
      if (ideal.insert(buf.data())) work.push_back(std::move(copy));
    }
  }
  ideal.finalize();

  SzResult res;
  res.ideal_dim = ideal.dim();
  res.index = 1;
  Echelon<Ops> cur = ideal;
  while (cur.dim() != 0) {
    res.power_dims.push_back(cur.dim());
    Echelon<Ops> next = pairwise_span(
        env, cur.dim(), ideal.dim(), false, parallel,
        [&](std::size_t i, auto& rows, auto&) { env.right_all(cur.row(i), rows); },
        [&](std::size_t, std::size_t j, const auto& rows, auto* out) { env.combine(rows, ideal.row(j), out); });
    if (next == cur) {
      res.witness = env.load(cur.row(0));
      return res;
    }
    cur = std::move(next);
    ++res.index;
  }
  res.nilpotent = true;
  return res;
}

}  // namespace

bool dense_supported(const EnvAlgebra& u) {
  const Field& f = u.field();
  return f.is_finite() && f.degree() <= 8 && u.generators() <= kMaxDenseGenerators;
}

bool openmp_enabled() {
#ifdef U2_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

DerivedSeries derived_series(const EnvAlgebra& u, const std::vector<Vec>& start, std::size_t max_steps, bool parallel) {
  if (!dense_supported(u)) throw Error(ErrorCode::UnsupportedField, "dense kernels need GF(2^k), k <= 8, and <= 11 generators");
  if (u.field().degree() == 1) return run_series(u, Gf2Ops{}, start, max_steps, parallel);
  const ByteOps ops(u.field());
  return run_series(u, ops, start, max_steps, parallel);
}

SzResult sz_nilpotency(const EnvAlgebra& u, bool parallel) {
  if (!dense_supported(u)) throw Error(ErrorCode::UnsupportedField, "dense kernels need GF(2^k), k <= 8, and <= 11 generators");
  if (u.field().degree() == 1) return run_sz(u, Gf2Ops{}, parallel);
  const ByteOps ops(u.field());
  return run_sz(u, ops, parallel);
}

}  // namespace u2::kernels
