#include "u2/classify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "u2/error.hpp"
#include "u2/families.hpp"

namespace u2 {

namespace {

constexpr int kMaxEnumerableDegree = 16;

Subspace third_term(const RestrictedLieAlgebra& l) {
  const Subspace d = l.derived();
  return l.bracket_span(l.bracket_span(d, d), l.whole());
}

/// 2-nilpotent elements of the restricted closure of L' ∩ Z.
Subspace central_derived_locus(const RestrictedLieAlgebra& l) {
  const Subspace w = l.derived().intersect(l.center());
  if (w.is_zero()) return w;
  return l.nilpotent_locus(l.restricted_closure(w.basis()).space);
}

bool is_class_le2(const RestrictedLieAlgebra& l) { return l.bracket_span(l.derived(), l.whole()).is_zero(); }

/// Representatives of L/Z taken from the basis of L.
std::vector<Vec> center_complement(const RestrictedLieAlgebra& l) {
  return Quotient(l.whole(), l.center()).lifts();
}

Subspace span_of(const RestrictedLieAlgebra& l, const std::vector<std::pair<std::string, Vec>>& els,
                 const std::string& prefix) {
  std::vector<Vec> vs;
  for (const auto& [name, v] : els)
    if (name.rfind(prefix, 0) == 0) vs.push_back(v);
  return l.span(vs);
}

const Vec* find_element(const Certificate& c, const std::string& name) {
  for (const auto& [n, v] : c.elements)
    if (n == name) return &v;
  return nullptr;
}

// ---------------------------------------------------------------- condition (i)

std::optional<Certificate> match_i(const RestrictedLieAlgebra& l) {
  const std::size_t n = l.dim();
  auto accept = [&](const Subspace& a) -> std::optional<Certificate> {
    if (a.dim() + 1 < n || !l.is_abelian(a) || !l.is_restricted_ideal(a)) return std::nullopt;
    Certificate c;
    c.tag = ConditionTag::I_CodimLE1Abelian;
    c.ideal = a;
    c.relations = {"A abelian", "A restricted ideal", "codim A = " + std::to_string(n - a.dim())};
    return c;
  };
  if (l.is_abelian()) return accept(l.whole());
  const Subspace d = l.derived();
  const Subspace c = l.centralizer(d);
  if (!(c == l.whole())) return accept(c);
  // L' is central: an abelian hyperplane A contains Z and equals C(h) for any h in A \ Z.
  const std::vector<Vec> reps = center_complement(l);
  if (reps.size() < 2) return std::nullopt;
  const Field& f = l.field();
  if (!f.is_finite() || f.degree() > kMaxEnumerableDegree) return std::nullopt;
  std::vector<Vec> candidates = {reps[1]};
  for (const auto& s : f.elements()) {
    Vec h = reps[0];
    axpy(f, s, reps[1], h);
    candidates.push_back(std::move(h));
  }
  for (const auto& h : candidates)
    if (auto cert = accept(l.centralizer(l.span({h})))) return cert;
  return std::nullopt;
}

// ---------------------------------------------------------------- condition (ii)

std::optional<Certificate> match_ii(const RestrictedLieAlgebra& l) {
  if (!is_class_le2(l)) return std::nullopt;
  const std::vector<Vec> reps = center_complement(l);
  if (reps.size() != 3) return std::nullopt;
  Certificate c;
  c.tag = ConditionTag::II_Class2Codim3;
  for (std::size_t i = 0; i < 3; ++i) c.elements.emplace_back("x" + std::to_string(i + 1), reps[i]);
  c.relations = {"[L',L] = 0", "dim L/Z = 3"};
  return c;
}

// ---------------------------------------------------------------- eigen frame for (iii)-(v)

/// y with [y, e] = e on a complement E of Z in M = L' + Z, where L = Fy + M.
struct EigenFrame {
  Vec y;
  std::vector<Vec> e;
  Subspace z;
};

std::optional<EigenFrame> eigen_frame(const RestrictedLieAlgebra& l) {
  const Field& f = l.field();
  const Subspace z = l.center();
  const Subspace m = l.derived().sum(z);
  if (m.dim() + 1 != l.dim()) return std::nullopt;
  if (!z.contains(l.bracket_span(m, m))) return std::nullopt;
  const Quotient qm(m, z);
  if (qm.dim() == 0) return std::nullopt;
  const Vec y0 = Quotient(l.whole(), m).lifts().at(0);
  const std::vector<Vec>& lifts = qm.lifts();
  // ad y0 must be a nonzero scalar on M/Z.
  std::optional<Scalar> lambda;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const Vec c = qm.project(l.bracket(y0, lifts[i]));
    if (!lambda) lambda = c[i];
    if (lambda->is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!(c[j] == (i == j ? *lambda : f.zero()))) return std::nullopt;
  }
  EigenFrame fr;
  fr.y = scale(f, f.inv(*lambda), y0);
  fr.z = z;
  for (const auto& w : lifts) {
    Vec e = l.bracket(w, fr.y);
    if (!(l.bracket(fr.y, e) == e)) return std::nullopt;
    fr.e.push_back(std::move(e));
  }
  return fr;
}

std::optional<Certificate> match_iii(const RestrictedLieAlgebra& l) {
  const auto fr = eigen_frame(l);
  if (!fr || fr->e.size() != 2) return std::nullopt;
  Certificate c;
  c.tag = ConditionTag::III_TwoEigenvectorsToral;
  c.elements = {{"x1", fr->e[0]}, {"x2", fr->e[1]}, {"y", fr->y}};
  c.relations = {"[x1,y] = x1", "[x2,y] = x2", "[x1,x2] in Z", "L = <x1,x2,y> + Z"};
  return c;
}

/// Hyperplanes H of E with [H,H] = 0, each paired with some x in E \ H.
std::vector<std::pair<std::vector<Vec>, Vec>> isotropic_hyperplanes(const RestrictedLieAlgebra& l,
                                                                     const EigenFrame& fr) {
  const Field& f = l.field();
  const std::size_t r = fr.e.size();
  const Subspace espan = l.span(fr.e);
  std::vector<std::pair<std::vector<Vec>, Vec>> out;
  auto pick_x = [&](const Subspace& h) -> Vec {
    for (const auto& e : fr.e)
      if (!h.contains(e)) return e;
    return {};
  };
  bool form_zero = true;
  for (std::size_t i = 0; i < r && form_zero; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!is_zero(l.bracket(fr.e[i], fr.e[j]))) {
        form_zero = false;
        break;
      }
  if (form_zero) {
    // Here [x,H] = 0, so both (iv) and (v) need H^[2] = 0; pmap is semilinear on E.
    Subspace k = espan;
    if (f.is_finite()) {
      std::vector<Vec> images;
      for (const auto& e : fr.e) images.push_back(l.pmap_eval(e));
      k = semilinear_kernel(f, l.dim(), fr.e, images, 1);
    }
    if (k.dim() + 1 < r) return out;
    Subspace h = k;
    if (k.dim() == r) {
      std::vector<Vec> rest(fr.e.begin() + 1, fr.e.end());
      h = l.span(rest);
    }
    out.emplace_back(h.basis(), pick_x(h));
    return out;
  }
  // Nonzero form: the radical R lies in H, and H = h^perp for any h in H \ R.
  if (!f.is_finite() || f.degree() > kMaxEnumerableDegree) return out;
  std::vector<Vec> rad_gens;
  {
    // Radical inside E: coefficient vectors a with sum a_i [e_i, e_j] = 0 for all j.
    const std::size_t n = l.dim();
    Matrix sys(f, r * n, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const Vec b = l.bracket(fr.e[i], fr.e[j]);
        for (std::size_t t = 0; t < n; ++t) sys.at(j * n + t, i) = b[t];
      }
    for (const auto& a : sys.nullspace()) {
      Vec v = zero_vec(n);
      for (std::size_t i = 0; i < r; ++i) axpy(f, a[i], fr.e[i], v);
      rad_gens.push_back(std::move(v));
    }
  }
  const Subspace rad = l.span(rad_gens);
  const std::vector<Vec> reps = Quotient(espan, rad).lifts();
  if (reps.size() < 2) return out;
  std::vector<Vec> candidates = {reps[1]};
  for (const auto& s : f.elements()) {
    Vec h = reps[0];
    axpy(f, s, reps[1], h);
    candidates.push_back(std::move(h));
  }
  for (const auto& h : candidates) {
    const Subspace hp = l.centralizer(l.span({h})).intersect(espan);
    if (hp.dim() + 1 != r || !l.is_abelian(hp)) continue;
    out.emplace_back(hp.basis(), pick_x(hp));
  }
  return out;
}

std::optional<Certificate> match_iv_v(const RestrictedLieAlgebra& l, ConditionTag tag) {
  const Field& f = l.field();
  const auto fr = eigen_frame(l);
  if (!fr) return std::nullopt;
  const bool iv = tag == ConditionTag::IV_StronglyAbelianH;
  for (auto& [hb, x0] : isotropic_hyperplanes(l, *fr)) {
    if (x0.empty()) continue;
    Vec x = x0;
    std::optional<Scalar> alpha;
    bool ok = true;
    if (iv) {
      for (const auto& h : hb)
        if (!is_zero(l.pmap_eval(h))) ok = false;
    } else {
      // Need gamma with gamma * [x,h]^[2] = h^[2] for the basis of H; then x -> sqrt(gamma) x.
      std::optional<Scalar> gamma;
      for (const auto& h : hb) {
        const Vec s = l.pmap_eval(l.bracket(x, h));
        const Vec t = l.pmap_eval(h);
        if (is_zero(s)) {
          if (!is_zero(t)) ok = false;
          continue;
        }
        std::size_t p = 0;
        while (s[p].is_zero()) ++p;
        const Scalar g = f.div(t[p], s[p]);
        if (gamma && !(*gamma == g)) ok = false;
        gamma = g;
        if (!(scale(f, g, s) == t)) ok = false;
      }
      if (ok && gamma) {
        if (gamma->is_zero()) {
          ok = false;
        } else {
          const auto root = f.sqrt(*gamma);
          if (!root) {
            ok = false;
          } else {
            alpha = *root;
            x = scale(f, *root, x);
          }
        }
      }
    }
    if (!ok) continue;
    Certificate c;
    c.tag = tag;
    c.elements = {{"x", x}, {"y", fr->y}};
    for (std::size_t i = 0; i < hb.size(); ++i) c.elements.emplace_back("h" + std::to_string(i + 1), hb[i]);
    c.rescale = alpha;
    c.relations = {"[x,y] = x", "[y,h] = h for h in H", "[x,H] in Z", "[H,H] = 0", "L = <x,y> + H + Z"};
    c.relations.push_back(iv ? "h^[2] = 0 for h in H" : "[x,h]^[2] = h^[2] for h in H");
    if (alpha) c.relations.push_back("x rescaled by " + f.format(*alpha));
    return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- necessary tests helpers

/// Element of the restricted ideal that is not 2-nilpotent, if one is found among simple combinations.
std::optional<Vec> non_nilpotent_element(const RestrictedLieAlgebra& l, const Subspace& s) {
  const auto& b = s.basis();
  for (const auto& v : b)
    if (!l.is_2nilpotent(v).nilpotent) return v;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      const Vec v = add(l.field(), b[i], b[j]);
      if (!l.is_2nilpotent(v).nilpotent) return v;
    }
  return std::nullopt;
}

bool env_nilpotent(const EnvAlgebra& u, const EnvElement& a) { return u.nilpotency_exponent(a).has_value(); }

// ---------------------------------------------------------------- triangularization helpers

std::vector<Scalar> eigenvalues(const Matrix& a) {
  const Field& f = a.field();
  std::vector<Scalar> out;
  for (const auto& s : f.elements()) {
    Matrix b = a;
    for (std::size_t i = 0; i < a.rows(); ++i) b.at(i, i) = f.add(b.at(i, i), s);
    if (b.rank() < a.rows()) out.push_back(s);
  }
  return out;
}

bool splits(const Matrix& a) {
  const Field& f = a.field();
  const std::size_t d = a.rows();
  std::size_t total = 0;
  for (const auto& s : eigenvalues(a)) {
    Matrix b = a;
    for (std::size_t i = 0; i < d; ++i) b.at(i, i) = f.add(b.at(i, i), s);
    total += d - b.power(static_cast<unsigned>(d)).rank();
  }
  return total == d;
}

std::optional<Vec> common_eigenvector(const std::vector<Matrix>& ms, std::size_t d, const Field& f) {
  std::function<std::optional<Vec>(std::size_t, const Subspace&)> go = [&](std::size_t i,
                                                                         const Subspace& s) -> std::optional<Vec> {
    if (s.is_zero()) return std::nullopt;
    if (i == ms.size()) return s.basis().front();
    for (const auto& lam : eigenvalues(ms[i])) {
      Matrix b = ms[i];
      for (std::size_t k = 0; k < d; ++k) b.at(k, k) = f.add(b.at(k, k), lam);
      const Subspace next = s.intersect(Subspace::span(f, d, b.nullspace()));
      if (auto v = go(i + 1, next)) return v;
    }
    return std::nullopt;
  };
  return go(0, Subspace::full(f, d));
}

Vec flatten(const Matrix& m) {
  Vec v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m.at(r, c));
  return v;
}

Matrix unflatten(const Field& f, std::size_t d, const Vec& v) {
  Matrix m(f, d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m.at(r, c) = v[r * d + c];
  return m;
}

bool same_structure(const RestrictedLieAlgebra& a, const RestrictedLieAlgebra& b) {
  if (!(a.field() == b.field()) || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!(a.pmap(i) == b.pmap(i))) return false;
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!(a.bracket_basis(i, j) == b.bracket_basis(i, j))) return false;
  }
  return true;
}

}  // namespace

std::string to_string(ConditionTag t) {
  switch (t) {
    case ConditionTag::I_CodimLE1Abelian: return "I_CodimLE1Abelian";
    case ConditionTag::II_Class2Codim3: return "II_Class2Codim3";
    case ConditionTag::III_TwoEigenvectorsToral: return "III_TwoEigenvectorsToral";
    case ConditionTag::IV_StronglyAbelianH: return "IV_StronglyAbelianH";
    case ConditionTag::V_MatchedSquaresH: return "V_MatchedSquaresH";
  }
  return "?";
}

std::string to_string(NecessaryTag t) {
  switch (t) {
    case NecessaryTag::DerivedIdealNotNilpotent: return "DerivedIdealNotNilpotent";
    case NecessaryTag::Class2FourTuple: return "Class2FourTuple";
    case NecessaryTag::ThreeStepPattern: return "ThreeStepPattern";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Solvable: return "Solvable";
    case Outcome::NotSolvable: return "NotSolvable";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(NotSolvableReason r) {
  switch (r) {
    case NotSolvableReason::SZWitness: return "SZWitness";
    case NotSolvableReason::OracleStabilized: return "OracleStabilized";
    case NotSolvableReason::NecessaryTestFailed: return "NecessaryTestFailed";
  }
  return "?";
}

std::optional<Certificate> match_condition(const RestrictedLieAlgebra& l, ConditionTag tag) {
  if (!l.field().is_finite()) throw Error(ErrorCode::UnsupportedField, "condition matching needs GF(2^k)");
  std::optional<Certificate> c;
  switch (tag) {
    case ConditionTag::I_CodimLE1Abelian: c = match_i(l); break;
    case ConditionTag::II_Class2Codim3: c = match_ii(l); break;
    case ConditionTag::III_TwoEigenvectorsToral: c = match_iii(l); break;
    case ConditionTag::IV_StronglyAbelianH:
    case ConditionTag::V_MatchedSquaresH: c = match_iv_v(l, tag); break;
  }
  if (c && !verify_certificate(l, *c)) return std::nullopt;
  return c;
}

bool verify_certificate(const RestrictedLieAlgebra& l, const Certificate& c) {
  const std::size_t n = l.dim();
  const Subspace z = l.center();
  switch (c.tag) {
    case ConditionTag::I_CodimLE1Abelian: {
      if (!c.ideal) return false;
      return c.ideal->dim() + 1 >= n && l.is_abelian(*c.ideal) && l.is_restricted_ideal(*c.ideal);
    }
    case ConditionTag::II_Class2Codim3:
      return is_class_le2(l) && n - z.dim() == 3;
    case ConditionTag::III_TwoEigenvectorsToral: {
      const Vec *x1 = find_element(c, "x1"), *x2 = find_element(c, "x2"), *y = find_element(c, "y");
      if (!x1 || !x2 || !y) return false;
      if (!(l.bracket(*x1, *y) == *x1) || !(l.bracket(*x2, *y) == *x2)) return false;
      if (!z.contains(l.bracket(*x1, *x2))) return false;
      const Subspace s = l.span({*x1, *x2, *y});
      return s.dim() == 3 && s.intersect(z).is_zero() && s.dim() + z.dim() == n;
    }
    case ConditionTag::IV_StronglyAbelianH:
    case ConditionTag::V_MatchedSquaresH: {
      const Vec *x = find_element(c, "x"), *y = find_element(c, "y");
      if (!x || !y) return false;
      if (!(l.bracket(*x, *y) == *x)) return false;
      std::vector<Vec> hs;
      for (const auto& [name, v] : c.elements)
        if (name.rfind("h", 0) == 0) hs.push_back(v);
      for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(l.bracket(*y, hs[i]) == hs[i])) return false;
        if (!z.contains(l.bracket(*x, hs[i]))) return false;
        for (std::size_t j = i + 1; j < hs.size(); ++j)
          if (!is_zero(l.bracket(hs[i], hs[j]))) return false;
        if (c.tag == ConditionTag::IV_StronglyAbelianH) {
          if (!is_zero(l.pmap_eval(hs[i]))) return false;
        } else if (!(l.pmap_eval(l.bracket(*x, hs[i])) == l.pmap_eval(hs[i]))) {
          return false;
        }
      }
      const Subspace h = span_of(l, c.elements, "h");
      if (h.dim() != hs.size()) return false;
      const Subspace all = l.span({*x, *y}).sum(h);
      return all.dim() == 2 + h.dim() && all.intersect(z).is_zero() && all.dim() + z.dim() == n;
    }
  }
  return false;
}

CoreResult nilpotent_core(const RestrictedLieAlgebra& l) {
  CoreResult res;
  Subspace core = Subspace::zero(l.field(), l.dim());
  for (;;) {
    std::optional<RestrictedLieAlgebra::QuotientAlgebra> q;
    if (!core.is_zero()) q = l.quotient(core);
    const RestrictedLieAlgebra& a = q ? q->algebra : l;
    Subspace add = Subspace::zero(a.field(), a.dim());
    const Subspace t = third_term(a);
    if (!t.is_zero()) {
      const Subspace d3 = a.restricted_closure(t.basis()).space;
      if (a.is_2nilpotent(d3).nilpotent) add = d3;
      else res.derived_part_nilpotent = false;
    }
    add = add.sum(central_derived_locus(a));
    if (add.is_zero()) break;
    add = a.restricted_closure(add.basis()).space;
    std::vector<Vec> gens = core.basis();
    for (const auto& v : add.basis()) gens.push_back(q ? q->coords.lift(v) : v);
    core = l.span(std::move(gens));
    ++res.rounds;
  }
  res.ideal = {core, true, true};
  if (!l.is_2nilpotent(core).nilpotent) throw Error(ErrorCode::PreconditionFailed, "core ideal is not 2-nilpotent");
  return res;
}

std::optional<NecessaryFailure> necessary_tests(const RestrictedLieAlgebra& l, const NecessaryOptions& opt) {
  const std::size_t n = l.dim();
  std::optional<EnvAlgebra> env;
  auto u = [&]() -> const EnvAlgebra& {
    if (!env) env.emplace(l);
    return *env;
  };

  // (a) <[[L',L'],L]>_2 must be 2-nilpotent.
  const Subspace t = third_term(l);
  if (!t.is_zero()) {
    const Subspace d3 = l.restricted_closure(t.basis()).space;
    if (!l.is_2nilpotent(d3).nilpotent) {
      NecessaryFailure fail{NecessaryTag::DerivedIdealNotNilpotent, {}, {}, "<[[L',L'],L]>_2 is not 2-nilpotent"};
      if (n <= EnvAlgebra::kMaxGenerators) {
        if (auto v = non_nilpotent_element(l, d3)) {
          fail.witness = u().from_lie(*v);
          fail.witness_text = u().format(fail.witness);
        }
      }
      return fail;
    }
  }
  if (n > EnvAlgebra::kMaxGenerators) return std::nullopt;

  // (b) class 2: [[x4 x3 x1, x4], [x4 x1, x1], x2] over four-tuples of a complement of Z.
  if (!l.is_abelian() && is_class_le2(l) && n <= opt.max_dim_four_tuple) {
    const std::vector<Vec> reps = center_complement(l);
    const std::size_t d = reps.size();
    if (d >= 4) {
      const EnvAlgebra& e = u();
      std::vector<EnvElement> g;
      for (const auto& r : reps) g.push_back(e.from_lie(r));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t c = 0; c < d; ++c)
            for (std::size_t k = 0; k < d; ++k) {
              if (a == b || a == c || a == k || b == c || b == k || c == k) continue;
              const EnvElement &x1 = g[a], &x2 = g[b], &x3 = g[c], &x4 = g[k];
              const EnvElement left = e.bracket(e.mul(e.mul(x4, x3), x1), x4);
              if (left.is_zero()) continue;
              const EnvElement right = e.bracket(e.mul(x4, x1), x1);
              const EnvElement v = e.bracket(e.bracket(left, right), x2);
              if (v.is_zero() || env_nilpotent(e, v)) continue;
              std::ostringstream os;
              os << "x1..x4 = " << l.format(reps[a]) << ", " << l.format(reps[b]) << ", " << l.format(reps[c]) << ", "
                 << l.format(reps[k]);
              return NecessaryFailure{NecessaryTag::Class2FourTuple, v, e.format(v), os.str()};
            }
    }
  }

  // (c) [[z b y, z], [x, x b], y] over four-tuples of basis vectors.
  if (!l.is_abelian() && n <= opt.max_dim_three_step) {
    const EnvAlgebra& e = u();
    for (std::size_t zi = 0; zi < n; ++zi)
      for (std::size_t bi = 0; bi < n; ++bi)
        for (std::size_t yi = 0; yi < n; ++yi)
          for (std::size_t xi = 0; xi < n; ++xi) {
            if (zi == bi || zi == yi || zi == xi || bi == yi || bi == xi || yi == xi) continue;
            const EnvElement z = e.gen(zi), b = e.gen(bi), y = e.gen(yi), x = e.gen(xi);
            const EnvElement left = e.bracket(e.mul(e.mul(z, b), y), z);
            if (left.is_zero()) continue;
            const EnvElement right = e.bracket(x, e.mul(x, b));
            if (right.is_zero()) continue;
            const EnvElement w = e.bracket(e.bracket(left, right), y);
            if (w.is_zero() || env_nilpotent(e, w)) continue;
            const auto& nm = l.names();
            return NecessaryFailure{NecessaryTag::ThreeStepPattern, w, e.format(w),
                                    "z, b, y, x = " + nm[zi] + ", " + nm[bi] + ", " + nm[yi] + ", " + nm[xi]};
          }
  }
  return std::nullopt;
}

TriangularizeResult triangularize(const std::vector<Matrix>& matrices, int ladder_max) {
  TriangularizeResult res;
  if (matrices.empty()) throw Error(ErrorCode::BadParameters, "no matrices");
  const Field base = matrices.front().field();
  if (!base.is_finite()) throw Error(ErrorCode::UnsupportedField, "triangularization needs GF(2^k)");
  const std::size_t d = matrices.front().rows();
  for (const auto& m : matrices)
    if (m.rows() != d || m.cols() != d || !(m.field() == base))
      throw Error(ErrorCode::DimensionMismatch, "matrices must be square of equal size over one field");

  // Lie closure of the span and its derived algebra.
  Subspace lie = Subspace::span(base, d * d, [&] {
    std::vector<Vec> vs;
    for (const auto& m : matrices) vs.push_back(flatten(m));
    return vs;
  }());
  for (;;) {
    std::vector<Vec> gens = lie.basis();
    const auto& b = lie.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        gens.push_back(flatten(commutator(unflatten(base, d, b[i]), unflatten(base, d, b[j]))));
    Subspace next = Subspace::span(base, d * d, std::move(gens));
    if (next == lie) break;
    lie = std::move(next);
  }
  std::vector<Vec> dgens;
  {
    const auto& b = lie.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        dgens.push_back(flatten(commutator(unflatten(base, d, b[i]), unflatten(base, d, b[j]))));
  }
  const Subspace derived = Subspace::span(base, d * d, dgens);

  auto find_witness = [&]() -> std::optional<Matrix> {
    const auto& b = derived.basis();
    for (const auto& v : b) {
      Matrix m = unflatten(base, d, v);
      if (!m.is_nilpotent()) return m;
    }
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        Matrix m = unflatten(base, d, add(base, b[i], b[j]));
        if (!m.is_nilpotent()) return m;
      }
    std::mt19937_64 rng(1);
    for (int t = 0; t < 64 && !b.empty(); ++t) {
      Vec v = zero_vec(d * d);
      for (const auto& w : b) axpy(base, base.random(rng), w, v);
      Matrix m = unflatten(base, d, v);
      if (!m.is_nilpotent()) return m;
    }
    return std::nullopt;
  };

  for (int m = 1; m <= ladder_max; ++m) {
    if (base.degree() * m > kMaxEnumerableDegree) break;
    const Embedding emb = m == 1 ? Embedding::identity(base) : extend(base, m);
    const Field& f = emb.target();
    std::vector<Matrix> ms;
    for (const auto& x : lie.basis()) ms.push_back(unflatten(base, d, x).map(emb));
    if (!std::all_of(ms.begin(), ms.end(), splits)) continue;
    res.extension_degree = m;
    res.field = f;
    Subspace flag = Subspace::zero(f, d);
    std::vector<Vec> chain;
    while (flag.dim() < d) {
      const Quotient q(Subspace::full(f, d), flag);
      const std::size_t dq = q.dim();
      std::vector<Matrix> induced;
      for (const auto& a : ms) {
        std::vector<Vec> cols;
        for (const auto& l : q.lifts()) cols.push_back(q.project(a.apply(l)));
        induced.push_back(Matrix::from_columns(f, dq, cols));
      }
      const auto v = common_eigenvector(induced, dq, f);
      if (!v) {
        res.triangularizable = false;
        res.witness = find_witness();
        res.detail = "no common eigenvector on a quotient of dimension " + std::to_string(dq);
        return res;
      }
      const Vec lifted = q.lift(*v);
      chain.push_back(lifted);
      flag = flag.sum(Subspace::span(f, d, {lifted}));
    }
    res.triangularizable = true;
    res.flag = std::move(chain);
    return res;
  }
  throw Error(ErrorCode::LadderExhausted, "characteristic polynomials do not split within the ladder");
}

std::string Verdict::summary() const {
  std::ostringstream os;
  os << to_string(outcome);
  if (outcome == Outcome::Solvable && certificate) {
    os << " (" << to_string(certificate->tag) << ", extension degree " << extension_degree;
    if (core) os << ", core dim " << core->space.dim();
    if (alternative_core) os << ", alternative core";
    os << ")";
  } else if (outcome == Outcome::NotSolvable && reason) {
    os << " (" << to_string(*reason);
    if (necessary_tag) os << ": " << to_string(*necessary_tag) << " witness non-nilpotent";
    if (*reason == NotSolvableReason::OracleStabilized) os << ": stable dim " << stable_dim;
    os << ")";
  } else if (outcome == Outcome::Inconclusive) {
    os << " (" << inconclusive_reason << ")";
  }
  return os.str();
}

Verdict classify(const RestrictedLieAlgebra& l, const ClassifyOptions& opt) {
  Verdict v;
  const Field& f = l.field();

  if (auto fail = necessary_tests(l, opt.necessary)) {
    v.outcome = Outcome::NotSolvable;
    v.reason = NotSolvableReason::NecessaryTestFailed;
    v.necessary_tag = fail->tag;
    v.witness = fail->witness;
    v.witness_text = fail->witness_text.empty() ? fail->detail : fail->witness_text;
  } else if (!f.is_finite()) {
    v.outcome = Outcome::Inconclusive;
    v.inconclusive_reason = "necessary tests pass; matching over F2(X,Y) is not supported";
    if (same_structure(l, families::example71())) {
      const auto rep = families::example_7_1_report();
      if (rep.part2() && rep.part3()) {
        v.outcome = Outcome::Solvable;
        v.extension_field = FieldDescriptor::ratfunc2();
        Certificate c;
        c.tag = ConditionTag::I_CodimLE1Abelian;
        c.relations = {"J = span(v, w) 2-nilpotent restricted ideal", "I abelian of codimension 1 in L/J"};
        v.certificate = c;
      } else {
        v.inconclusive_reason = "square-root extension: J " + std::string(rep.part2() ? "verified" : "not verified") +
                                "; ideal in L/J " + (rep.ideal_abelian ? "abelian" : "not abelian");
      }
    }
    return v;
  } else {
    bool found = false;
    for (int m = 1; m <= opt.extension_ladder_max && !found; ++m) {
      if (f.degree() * m > 32) break;
      const Embedding emb = m == 1 ? Embedding::identity(f) : extend(f, m);
      const RestrictedLieAlgebra lm = m == 1 ? l : l.base_change(emb);
      const CoreResult core = nilpotent_core(lm);

      auto try_core = [&](const Subspace& ideal, bool alternative) {
        std::optional<RestrictedLieAlgebra::QuotientAlgebra> q;
        if (!ideal.is_zero()) q = lm.quotient(ideal);
        const RestrictedLieAlgebra& lbar = q ? q->algebra : lm;
        for (ConditionTag tag : {ConditionTag::I_CodimLE1Abelian, ConditionTag::II_Class2Codim3,
                                 ConditionTag::III_TwoEigenvectorsToral, ConditionTag::IV_StronglyAbelianH,
                                 ConditionTag::V_MatchedSquaresH}) {
          if (auto c = match_condition(lbar, tag)) {
            v.outcome = Outcome::Solvable;
            v.certificate = std::move(c);
            v.core = RestrictedIdeal{ideal, true, true};
            v.extension_degree = m;
            v.extension_field = lm.field().descriptor();
            v.matched = lbar;
            v.alternative_core = alternative;
            return true;
          }
        }
        return false;
      };

      found = try_core(core.ideal.space, false);
      if (!found && lm.dim() <= opt.exhaustive_core_dim_limit) {
        // Alternative cores: restricted closures of subsets of the central 2-nilpotent locus,
        // each added to the canonical core and also taken alone.
        const Subspace locus = lm.nilpotent_locus(lm.center());
        const auto& basis = locus.basis();
        const std::size_t c = basis.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << c) && !found; ++mask) {
          std::vector<Vec> gens;
          for (std::size_t i = 0; i < c; ++i)
            if (mask >> i & 1u) gens.push_back(basis[i]);
          const Subspace alone = lm.restricted_closure(gens).space;
          const Subspace joint = lm.restricted_closure(alone.sum(core.ideal.space).basis()).space;
          for (const Subspace& ideal : {alone, joint}) {
            if (found || ideal == core.ideal.space || !lm.is_2nilpotent(ideal).nilpotent) continue;
            found = try_core(ideal, true);
          }
        }
      }
    }
    if (!found) {
      v.outcome = Outcome::Inconclusive;
      v.inconclusive_reason = "no condition matched within the extension ladder";
    }
  }

  if (opt.oracle_crosscheck && f.is_finite() && l.dim() <= opt.oracle_max_dim) {
    const EnvAlgebra u(l);
    v.oracle = lie_derived_series(u, opt.oracle_backend);
    const bool solvable = v.oracle->reached_zero;
    if (v.outcome == Outcome::Inconclusive && !solvable) {
      v.outcome = Outcome::NotSolvable;
      v.stable_dim = v.oracle->stable_dim;
      const SzResult sz = sz_nilpotency(u, opt.oracle_backend);
      if (!sz.nilpotent) {
        v.reason = NotSolvableReason::SZWitness;
        v.witness = sz.witness;
        v.witness_text = u.format(sz.witness);
      } else {
        v.reason = NotSolvableReason::OracleStabilized;
      }
    } else if (v.outcome == Outcome::Inconclusive) {
      v.inconclusive_reason += "; oracle reports solvable";
    }
    if (v.outcome != Outcome::Inconclusive) v.oracle_agrees = (v.outcome == Outcome::Solvable) == solvable;
  }
  return v;
}

}  // namespace u2
