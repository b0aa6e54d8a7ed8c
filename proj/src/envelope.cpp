#include "u2/envelope.hpp"

#include <bit>
#include <sstream>

#include "u2/error.hpp"
#include "u2/kernels.hpp"

namespace u2 {

namespace {

std::size_t top_bit(Mask m) { return static_cast<std::size_t>(31 - std::countl_zero(m)); }

void add_term(const Field& f, EnvElement& e, Mask m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = e.terms.try_emplace(m, c);
  if (!inserted) {
    it->second = f.add(it->second, c);
    if (it->second.is_zero()) e.terms.erase(it);
  }
}

void add_scaled(const Field& f, EnvElement& acc, const Scalar& c, const EnvElement& x) {
  if (c.is_zero()) return;
  const bool unit = c == f.one();
  for (const auto& [m, v] : x.terms) add_term(f, acc, m, unit ? v : f.mul(c, v));
}

Subspace env_span(const EnvAlgebra& u, const std::vector<EnvElement>& xs) {
  std::vector<Vec> vs;
  for (const auto& x : xs)
    if (!x.is_zero()) vs.push_back(u.to_vec(x));
  return Subspace::span(u.field(), u.dim(), std::move(vs));
}

std::vector<EnvElement> env_basis(const EnvAlgebra& u, const Subspace& s) {
  std::vector<EnvElement> out;
  for (const auto& v : s.basis()) out.push_back(u.from_vec(v));
  return out;
}

}  // namespace

EnvAlgebra::EnvAlgebra(RestrictedLieAlgebra lie) : lie_(std::move(lie)) {
  if (lie_.dim() > kMaxGenerators) throw Error(ErrorCode::BadParameters, "u(L) supports at most 16 generators");
  memo_.resize(dim() * lie_.dim());
}

EnvElement EnvAlgebra::monomial(Mask m) const {
  EnvElement e;
  e.terms.emplace(m, field().one());
  return e;
}

EnvElement EnvAlgebra::from_lie(const Vec& v) const {
  EnvElement e;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) e.terms.emplace(Mask{1} << i, v[i]);
  return e;
}

EnvElement EnvAlgebra::add(const EnvElement& a, const EnvElement& b) const {
  EnvElement r = a;
  for (const auto& [m, c] : b.terms) add_term(field(), r, m, c);
  return r;
}

EnvElement EnvAlgebra::scale(const Scalar& c, const EnvElement& a) const {
  EnvElement r;
  add_scaled(field(), r, c, a);
  return r;
}

const EnvElement& EnvAlgebra::mono_times_gen(Mask m, std::size_t j) const {
  const std::size_t n = lie_.dim();
  auto& slot = memo_[static_cast<std::size_t>(m) * n + j];
  if (slot) return *slot;
  const Field& f = field();
  const Mask bj = Mask{1} << j;
  EnvElement r;
  if (m == 0 || top_bit(m) < j) {
    r.terms.emplace(m | bj, f.one());
  } else if (top_bit(m) == j) {
    // m' b_j b_j = m' b_j^[2]
    const Mask rest = m ^ bj;
    const Vec& p = lie_.pmap(j);
    for (std::size_t k = 0; k < n; ++k)
      if (!p[k].is_zero()) add_scaled(f, r, p[k], mono_times_gen(rest, k));
  } else {
    // m' b_t b_j = (m' b_j) b_t + m' [b_t, b_j]
    const std::size_t t = top_bit(m);
    const Mask rest = m ^ (Mask{1} << t);
    const EnvElement first = mono_times_gen(rest, j);
    r = mul_gen(first, t);
    const Vec& br = lie_.bracket_basis(t, j);
    for (std::size_t k = 0; k < n; ++k)
      if (!br[k].is_zero()) add_scaled(f, r, br[k], mono_times_gen(rest, k));
  }
  slot = std::move(r);
  return *slot;
}

void EnvAlgebra::precompute() const {
  for (Mask m = 0; m < dim(); ++m)
    for (std::size_t j = 0; j < lie_.dim(); ++j) mono_times_gen(m, j);
}

EnvElement EnvAlgebra::mul_gen(const EnvElement& a, std::size_t j) const {
  EnvElement r;
  for (const auto& [m, c] : a.terms) add_scaled(field(), r, c, mono_times_gen(m, j));
  return r;
}

EnvElement EnvAlgebra::gen_mul(std::size_t j, const EnvElement& a) const { return mul(gen(j), a); }

EnvElement EnvAlgebra::mul(const EnvElement& a, const EnvElement& b) const {
  EnvElement r;
  if (a.is_zero()) return r;
  for (const auto& [mb, cb] : b.terms) {
    EnvElement cur = a;
    for (Mask rest = mb; rest != 0 && !cur.is_zero(); rest &= rest - 1)
      cur = mul_gen(cur, static_cast<std::size_t>(std::countr_zero(rest)));
    add_scaled(field(), r, cb, cur);
  }
  return r;
}

EnvElement EnvAlgebra::bracket(const EnvElement& a, const EnvElement& b) const { return add(mul(a, b), mul(b, a)); }

EnvElement EnvAlgebra::pow(const EnvElement& a, std::uint64_t e) const {
  EnvElement r = one();
  EnvElement x = a;
  while (e) {
    if (e & 1u) r = mul(r, x);
    e >>= 1;
    if (e) x = mul(x, x);
  }
  return r;
}

std::optional<std::size_t> EnvAlgebra::nilpotency_exponent(const EnvElement& a) const {
  EnvElement x = a;
  for (std::size_t k = 0; k <= lie_.dim(); ++k) {
    if (x.is_zero()) return k;
    x = mul(x, x);
  }
  return std::nullopt;
}

Vec EnvAlgebra::to_vec(const EnvElement& a) const {
  Vec v(dim());
  for (const auto& [m, c] : a.terms) v.at(m) = c;
  return v;
}

EnvElement EnvAlgebra::from_vec(const Vec& v) const {
  if (v.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "u(L) coordinate vector has wrong length");
  EnvElement e;
  for (std::size_t m = 0; m < v.size(); ++m)
    if (!v[m].is_zero()) e.terms.emplace(static_cast<Mask>(m), v[m]);
  return e;
}

EnvElement EnvAlgebra::random(std::mt19937_64& rng, double density) const {
  EnvElement e;
  const auto threshold = static_cast<std::uint64_t>(density * 1024.0);
  for (Mask m = 0; m < dim(); ++m) {
    if (rng() % 1024 >= threshold) continue;
    const Scalar c = field().random(rng);
    if (!c.is_zero()) e.terms.emplace(m, c);
  }
  return e;
}

std::string EnvAlgebra::format(const EnvElement& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  const Field& f = field();
  for (const auto& [m, c] : a.terms) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
      if (!mono.empty()) mono += "*";
      mono += lie_.names()[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    std::string coeff;
    if (!(c == f.one())) {
      coeff = f.format(c);
      if (coeff.find_first_of("+/") != std::string::npos && coeff.front() != '(') coeff = "(" + coeff + ")";
    }
    if (mono.empty()) s += coeff.empty() ? "1" : coeff;
    else s += coeff.empty() ? mono : coeff + "*" + mono;
  }
  return s;
}

Subspace env_bracket_span(const EnvAlgebra& u, const Subspace& a, const Subspace& b) {
  const auto ea = env_basis(u, a);
  const auto eb = env_basis(u, b);
  std::vector<EnvElement> out;
  for (std::size_t i = 0; i < ea.size(); ++i)
    for (std::size_t j = 0; j < eb.size(); ++j) out.push_back(u.bracket(ea[i], eb[j]));
  return env_span(u, out);
}

namespace {

Backend resolve(const EnvAlgebra& u, Backend b) {
  if (b != Backend::Auto) return b;
  return kernels::dense_supported(u) ? Backend::DenseParallel : Backend::Reference;
}

DerivedSeries reference_series(const EnvAlgebra& u, Subspace cur, std::size_t max_steps) {
  DerivedSeries out;
  out.dims.push_back(cur.dim());
  for (std::size_t step = 1; step <= max_steps; ++step) {
    if (cur.is_zero()) break;
    Subspace next = env_bracket_span(u, cur, cur);
    if (next == cur) {
      out.length = step - 1;
      out.stable_dim = cur.dim();
      return out;
    }
    out.dims.push_back(next.dim());
    cur = std::move(next);
    if (cur.is_zero()) {
      out.reached_zero = true;
      out.length = step;
      return out;
    }
  }
  if (cur.is_zero()) {
    out.reached_zero = true;
    out.length = 0;
    return out;
  }
  throw Error(ErrorCode::BudgetExceeded, "derived series did not settle within the step budget");
}

}  // namespace

DerivedSeries lie_derived_series(const EnvAlgebra& u, const std::vector<EnvElement>& start, Backend backend,
                                 std::size_t max_steps) {
  backend = resolve(u, backend);
  if (backend == Backend::Reference) return reference_series(u, env_span(u, start), max_steps);
  std::vector<Vec> vs;
  for (const auto& e : start) vs.push_back(u.to_vec(e));
  return kernels::derived_series(u, vs, max_steps, backend == Backend::DenseParallel);
}

DerivedSeries lie_derived_series(const EnvAlgebra& u, Backend backend, std::size_t max_steps) {
  std::vector<EnvElement> all;
  for (Mask m = 0; m < u.dim(); ++m) all.push_back(u.monomial(m));
  return lie_derived_series(u, all, backend, max_steps);
}

SzResult sz_nilpotency(const EnvAlgebra& u, Backend backend) {
  backend = resolve(u, backend);
  if (backend != Backend::Reference) return kernels::sz_nilpotency(u, backend == Backend::DenseParallel);

  const Subspace r = Subspace::full(u.field(), u.dim());
  const Subspace d1 = env_bracket_span(u, r, r);
  const Subspace d2 = env_bracket_span(u, d1, d1);
  Subspace ideal = env_bracket_span(u, d2, r);
  // Two-sided closure under multiplication by generators.
  std::vector<EnvElement> work = env_basis(u, ideal);
  while (!work.empty()) {
    EnvElement x = std::move(work.back());
    work.pop_back();
    for (std::size_t j = 0; j < u.generators(); ++j) {
      for (EnvElement y : {u.mul_gen(x, j), u.gen_mul(j, x)}) {
        if (y.is_zero() || ideal.contains(u.to_vec(y))) continue;
        ideal = Subspace::span(u.field(), u.dim(), [&] {
          auto b = ideal.basis();
          b.push_back(u.to_vec(y));
          return b;
        }());
        work.push_back(std::move(y));
      }
    }
  }
  SzResult res;
  res.ideal_dim = ideal.dim();
  const auto jb = env_basis(u, ideal);
  Subspace cur = ideal;
  res.index = 1;
  while (!cur.is_zero()) {
    res.power_dims.push_back(cur.dim());
    std::vector<EnvElement> prods;
    for (const auto& x : env_basis(u, cur))
      for (const auto& y : jb) prods.push_back(u.mul(x, y));
    Subspace next = env_span(u, prods);
    if (next == cur) {
      res.nilpotent = false;
      res.witness = u.from_vec(cur.basis().front());
      return res;
    }
    cur = std::move(next);
    ++res.index;
  }
  res.nilpotent = true;
  return res;
}

ReducednessReport reducedness_check(const RestrictedLieAlgebra& l, std::uint64_t seed) {
  ReducednessReport rep;
  const auto [torus, nil] = l.torus_decomposition();
  rep.structural = nil.is_zero();
  const Field& f = l.field();
  const EnvAlgebra u(l);
  if (u.dim() <= 256) {
    // u(L) is commutative, so x -> x^2 is additive and 2-semilinear.
    std::vector<Vec> w;
    std::vector<Vec> images;
    for (Mask m = 0; m < u.dim(); ++m) {
      w.push_back(u.to_vec(u.monomial(m)));
      images.push_back(w.back());
    }
    std::vector<EnvElement> cur;
    for (Mask m = 0; m < u.dim(); ++m) cur.push_back(u.monomial(m));
    Subspace prev = Subspace::zero(f, u.dim());
    for (unsigned k = 1; k <= l.dim() + 1; ++k) {
      for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] = u.mul(cur[i], cur[i]);
        images[i] = u.to_vec(cur[i]);
      }
      Subspace ker = semilinear_kernel(f, u.dim(), w, images, k);
      const bool stable = ker == prev;
      prev = std::move(ker);
      if (stable) break;
    }
    rep.exact = prev.is_zero();
  }
  if (u.dim() <= 256 && f.degree() <= 2) {
    std::mt19937_64 rng(seed);
    rep.samples = 256;
    for (std::size_t s = 0; s < rep.samples && !rep.sample_found_nilpotent; ++s) {
      const EnvElement x = u.random(rng, 0.25);
      if (!x.is_zero() && u.nilpotency_exponent(x)) rep.sample_found_nilpotent = true;
    }
  }
  return rep;
}

bool CertificateReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string CertificateReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) os << (c.passed ? "  ok   " : "  FAIL ") << c.name << "\n";
  return os.str();
}

CertificateReport cond_ii_certificate(const RestrictedLieAlgebra& l) {
  const auto lower = l.series(Series::LowerCentral);
  const bool class_le_2 = lower.size() <= 3 && lower.back().is_zero();
  const Subspace z = l.center();
  const std::size_t d = l.dim() - z.dim();
  if (!class_le_2 || d > 3) throw Error(ErrorCode::PreconditionFailed, "needs class <= 2 and dim L/Z(L) <= 3");

  // Adapted basis: x_1..x_d spanning a complement of Z(L), then a basis of Z(L).
  const Quotient q(l.whole(), z);
  std::vector<Vec> cols = q.lifts();
  cols.insert(cols.end(), z.basis().begin(), z.basis().end());
  const RestrictedLieAlgebra la = l.change_basis(Matrix::from_columns(l.field(), l.dim(), cols));
  const EnvAlgebra u(la);
  const Field& f = u.field();
  const Mask xmask = (Mask{1} << d) - 1;
  const Mask full_x = d == 3 ? xmask : Mask{0xffffffffu};

  std::vector<Vec> hv, kv;
  for (Mask m = 0; m < u.dim(); ++m) {
    const Mask xp = m & xmask;
    if (xp != full_x) hv.push_back(u.to_vec(u.monomial(m)));
    if (std::popcount(xp) <= 1) kv.push_back(u.to_vec(u.monomial(m)));
  }
  const Subspace g = Subspace::full(f, u.dim());
  const Subspace h = Subspace::span(f, u.dim(), hv);
  const Subspace k = Subspace::span(f, u.dim(), kv);

  CertificateReport rep;
  rep.checks.push_back({"[h, g] in h", h.contains(env_bracket_span(u, h, g))});
  rep.checks.push_back({"[g, g] in h (g/h abelian)", h.contains(env_bracket_span(u, g, g))});
  rep.checks.push_back({"[k, h] in k", k.contains(env_bracket_span(u, k, h))});
  const Subspace kk = env_bracket_span(u, k, k);
  rep.checks.push_back({"k'' = 0", env_bracket_span(u, kk, kk).is_zero()});
  const Subspace hh = env_bracket_span(u, h, h);
  rep.checks.push_back({"(h/k)'' = 0", k.contains(env_bracket_span(u, hh, hh))});
  if (d == 3) {
    auto x = [&](Mask bits) { return u.monomial(bits); };
    auto c = [&](std::size_t i, std::size_t j) { return u.from_lie(la.bracket_basis(i, j)); };
    const EnvElement x12 = x(0b011), x13 = x(0b101), x23 = x(0b110);
    const EnvElement e[3] = {u.bracket(x12, x13), u.bracket(x12, x23), u.bracket(x13, x23)};
    const EnvElement rhs[3] = {
        u.add(u.mul(c(0, 2), x12), u.mul(c(0, 1), x13)),
        u.add(u.mul(c(0, 1), x23), u.mul(c(1, 2), x12)),
        u.add(u.mul(c(0, 2), x23), u.mul(c(1, 2), x13)),
    };
    for (int i = 0; i < 3; ++i)
      rep.checks.push_back({"e" + std::to_string(i + 1) + " formula modulo k", k.contains(u.to_vec(u.add(e[i], rhs[i])))});
    bool all = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) all = all && k.contains(u.to_vec(u.bracket(e[i], e[j])));
    rep.checks.push_back({"[e_i, e_j] in k", all});
  }
  return rep;
}

EmbeddingReport m2_embedding_check(const RestrictedLieAlgebra& l, const Subspace& a, std::size_t pairs,
                                   std::uint64_t seed) {
  if (a.dim() + 1 != l.dim()) throw Error(ErrorCode::PreconditionFailed, "A must have codimension 1");
  if (!l.is_abelian(a) || !l.is_restricted_ideal(a))
    throw Error(ErrorCode::PreconditionFailed, "A must be an abelian restricted ideal");
  std::size_t yi = 0;
  while (a.contains(l.basis_vec(yi))) ++yi;
  std::vector<Vec> cols = a.basis();
  cols.push_back(l.basis_vec(yi));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.dim(); ++i) names.push_back(l.names()[a.pivots()[i]]);
  names.push_back(l.names()[yi]);
  RestrictedLieAlgebra la = l.change_basis(Matrix::from_columns(l.field(), l.dim(), cols));
  la.set_names(names);
  const EnvAlgebra u(la);
  const std::size_t top = la.dim() - 1;
  const Mask ybit = Mask{1} << top;

  using M2 = std::array<EnvElement, 4>;
  auto split = [&](const EnvElement& e) {
    std::pair<EnvElement, EnvElement> ab;
    for (const auto& [m, c] : e.terms) {
      if (m & ybit) ab.second.terms.emplace(m ^ ybit, c);
      else ab.first.terms.emplace(m, c);
    }
    return ab;
  };
  auto rho = [&](const EnvElement& r) {
    auto [p, q] = split(r);
    auto [s, t] = split(u.gen_mul(top, r));
    return M2{p, q, s, t};
  };
  auto mm = [&](const M2& x, const M2& y) {
    return M2{u.add(u.mul(x[0], y[0]), u.mul(x[1], y[2])), u.add(u.mul(x[0], y[1]), u.mul(x[1], y[3])),
              u.add(u.mul(x[2], y[0]), u.mul(x[3], y[2])), u.add(u.mul(x[2], y[1]), u.mul(x[3], y[3]))};
  };

  EmbeddingReport rep;
  for (std::size_t i = 0; i < la.dim(); ++i) {
    const M2 g = rho(u.gen(i));
    rep.generator_matrices.push_back(la.names()[i] + " -> [[" + u.format(g[0]) + ", " + u.format(g[1]) + "], [" +
                                     u.format(g[2]) + ", " + u.format(g[3]) + "]]");
  }
  std::mt19937_64 rng(seed);
  rep.ok = true;
  for (std::size_t i = 0; i < pairs; ++i) {
    const EnvElement r = u.random(rng, 0.5);
    const EnvElement s = u.random(rng, 0.5);
    if (!(rho(u.mul(r, s)) == mm(rho(r), rho(s)))) rep.ok = false;
    ++rep.pairs_checked;
  }
  return rep;
}

}  // namespace u2
