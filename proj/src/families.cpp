#include "u2/families.hpp"

#include <random>
#include <sstream>

#include "u2/error.hpp"

namespace u2::families {

namespace {

struct TagName {
  FamilyTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {
    {FamilyTag::FamI, "fam-i"},
    {FamilyTag::FamII, "fam-ii"},
    {FamilyTag::FamIII, "fam-iii"},
    {FamilyTag::FamIV, "fam-iv"},
    {FamilyTag::FamV, "fam-v"},
    {FamilyTag::Heisenberg, "heisenberg"},
    {FamilyTag::NegativeClass2, "n7"},
    {FamilyTag::WitnessChain, "witness-chain"},
    {FamilyTag::Example71, "example-7-1"},
    {FamilyTag::Example71Extended, "example-7-1-ext"},
    {FamilyTag::Random, "random"},
};

std::vector<std::string> numbered(const std::string& stem, std::size_t count, std::size_t first = 1) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
  return out;
}

std::vector<std::string> concat(std::vector<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void verify(const RestrictedLieAlgebra& l, const char* what) {
  const AxiomReport rep = l.check_axioms();
  if (!rep.ok()) throw Error(ErrorCode::BadParameters, std::string(what) + " violates axioms: " + rep.to_string());
}

/// Random vector with at most `terms` nonzero entries.
Vec sparse_random(const Field& f, std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  Vec v = zero_vec(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (std::size_t t = 0; t < terms; ++t) v[idx(rng)] = f.random(rng);
  return v;
}

}  // namespace

std::string to_string(FamilyTag t) {
  for (const auto& e : kTagNames)
    if (e.tag == t) return e.name;
  return "unknown";
}

std::optional<FamilyTag> parse_tag(const std::string& s) {
  for (const auto& e : kTagNames)
    if (s == e.name) return e.tag;
  return std::nullopt;
}

RestrictedLieAlgebra heisenberg(const Field& f) {
  RestrictedLieAlgebra l(f, 3, {"e1", "e2", "e3"});
  l.set_bracket(0, 1, l.basis_vec(2));
  return l;
}

RestrictedLieAlgebra fam_i(const Field& f, std::size_t dim_a, int variant) {
  if (dim_a == 0 || variant < 0 || variant > 1) throw Error(ErrorCode::BadParameters, "fam-i needs dim A >= 1, variant 0/1");
  const std::size_t m = dim_a, n = m + 1;
  RestrictedLieAlgebra l(f, n, concat({numbered("a", m), {"y"}}));
  const std::size_t y = m;
  if (variant == 0) {
    // D = projection onto the first r coordinates; a_{m-1} spans part of ker D when r < m.
    const std::size_t r = (m + 1) / 2;
    for (std::size_t i = 0; i < r; ++i) l.set_bracket(i, y, l.basis_vec(i));
    for (std::size_t i = 0; i < m; ++i) {
      if (i >= r) l.set_pmap(i, l.basis_vec(i));
      else if (r < m) l.set_pmap(i, l.basis_vec(m - 1));
    }
    l.set_pmap(y, l.basis_vec(y));
  } else {
    // D a_{2i} = a_{2i+1}, so D^2 = 0 and y^[2] = 0.
    for (std::size_t i = 0; i + 1 < m; i += 2) l.set_bracket(i, y, l.basis_vec(i + 1));
    const std::size_t sink = m >= 2 ? 1 : 0;
    for (std::size_t i = 0; i < m; i += 2)
      if (i + 1 < m || m == 1) l.set_pmap(i, l.basis_vec(sink));
  }
  verify(l, "fam-i");
  return l;
}

RestrictedLieAlgebra free_class2(const Field& f, std::size_t g) {
  std::vector<std::string> names = numbered("x", g);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      pairs.emplace_back(i, j);
      names.push_back("z" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  RestrictedLieAlgebra l(f, names.size(), names);
  for (std::size_t p = 0; p < pairs.size(); ++p) l.set_bracket(pairs[p].first, pairs[p].second, l.basis_vec(g + p));
  return l;
}

RestrictedLieAlgebra fam_ii(const Field& f, std::size_t extra_center, int variant) {
  if (variant < 0 || variant > 2) throw Error(ErrorCode::BadParameters, "fam-ii variant must be 0..2");
  const RestrictedLieAlgebra base = free_class2(f, 3);
  const std::size_t n = 6 + extra_center;
  RestrictedLieAlgebra l(f, n, concat({base.names(), numbered("c", extra_center)}));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      Vec v = base.bracket_basis(i, j);
      v.resize(n);
      if (!is_zero(v)) l.set_bracket(i, j, v);
    }
  if (variant >= 1) {
    for (std::size_t c = 6; c < n; ++c) l.set_pmap(c, l.basis_vec(c));
    l.set_pmap(0, l.basis_vec(5));
    l.set_pmap(1, n > 6 ? l.basis_vec(6) : l.basis_vec(3));
  }
  if (variant == 2) {
    l.set_pmap(3, l.basis_vec(3));
    l.set_pmap(4, add(f, l.basis_vec(3), l.basis_vec(4)));
  }
  verify(l, "fam-ii");
  return l;
}

RestrictedLieAlgebra fam_iii(const Field& f, std::size_t dim_z, int variant) {
  if (dim_z > 2 || variant < 0 || variant > 1) throw Error(ErrorCode::BadParameters, "fam-iii needs dim Z <= 2, variant 0/1");
  const std::size_t n = 3 + dim_z;
  RestrictedLieAlgebra l(f, n, concat({{"x1", "x2", "y"}, numbered("z", dim_z)}));
  l.set_bracket(0, 2, l.basis_vec(0));
  l.set_bracket(1, 2, l.basis_vec(1));
  l.set_pmap(2, l.basis_vec(2));
  if (dim_z >= 1 && variant == 1) l.set_bracket(0, 1, l.basis_vec(3));
  if (dim_z >= 1) l.set_pmap(0, l.basis_vec(n - 1));
  if (dim_z == 2) l.set_pmap(4, l.basis_vec(4));
  verify(l, "fam-iii");
  return l;
}

namespace {

/// Shared shape of (iv) and (v): x, y, h_1..h_m, z_1..z_m with [x,y] = x, [y,h] = h, [x,h_i] = z_i.
RestrictedLieAlgebra xyhz(const Field& f, std::size_t dim_h) {
  if (dim_h == 0) throw Error(ErrorCode::BadParameters, "dim H must be >= 1");
  const std::size_t n = 2 + 2 * dim_h;
  RestrictedLieAlgebra l(f, n, concat({{"x", "y"}, numbered("h", dim_h), numbered("z", dim_h)}));
  l.set_bracket(0, 1, l.basis_vec(0));
  for (std::size_t i = 0; i < dim_h; ++i) {
    const std::size_t h = 2 + i, z = 2 + dim_h + i;
    l.set_bracket(1, h, l.basis_vec(h));
    l.set_bracket(0, h, l.basis_vec(z));
    l.set_pmap(z, l.basis_vec(z));
  }
  l.set_pmap(1, l.basis_vec(1));
  return l;
}

}  // namespace

RestrictedLieAlgebra fam_iv(const Field& f, std::size_t dim_h) {
  RestrictedLieAlgebra l = xyhz(f, dim_h);
  verify(l, "fam-iv");
  return l;
}

RestrictedLieAlgebra fam_v(const Field& f, std::size_t dim_h) {
  RestrictedLieAlgebra l = xyhz(f, dim_h);
  const Scalar binv = f.inv(f.generator());
  for (std::size_t i = 0; i < dim_h; ++i) l.set_pmap(2 + i, scale(f, binv, l.basis_vec(2 + dim_h + i)));
  verify(l, "fam-v");
  return l;
}

RestrictedLieAlgebra n7(const Field& f) {
  RestrictedLieAlgebra l(f, 7, {"x1", "x2", "x3", "x4", "z12", "z13", "z14"});
  l.set_bracket(0, 1, l.basis_vec(4));
  l.set_bracket(0, 2, l.basis_vec(5));
  l.set_bracket(0, 3, l.basis_vec(6));
  l.set_bracket(1, 2, l.basis_vec(6));
  l.set_pmap(6, l.basis_vec(6));
  verify(l, "n7");
  return l;
}

RestrictedLieAlgebra witness_chain(const Field& f, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::BadParameters, "witness chain needs k >= 1");
  const std::size_t n = 2 + 3 * k;
  RestrictedLieAlgebra l(f, n, concat({{"x", "y"}, numbered("a", k), numbered("c", k), numbered("d", k)}));
  for (std::size_t i = 0; i < k; ++i) {
    l.set_bracket(0, 2 + i, l.basis_vec(2 + k + i));
    l.set_bracket(1, 2 + i, l.basis_vec(2 + 2 * k + i));
  }
  verify(l, "witness-chain");
  return l;
}

RestrictedLieAlgebra example71() {
  const Field f = Field::ratfunc2();
  const Scalar alpha = f.generator();
  const Scalar beta = f.from_rat(RationalFunction::parse("Y"));
  RestrictedLieAlgebra l(f, 7, {"x", "x1", "x2", "x3", "z1", "z2", "z3"});
  const std::size_t x = 0, x1 = 1, x2 = 2, x3 = 3, z1 = 4, z2 = 5, z3 = 6;
  l.set_bracket(x, x1, l.basis_vec(z1));
  l.set_bracket(x, x3, l.basis_vec(z1));
  l.set_bracket(x, x2, l.basis_vec(z2));
  l.set_bracket(x1, x2, l.basis_vec(z3));
  l.set_bracket(x1, x3, scale(f, f.div(beta, alpha), l.basis_vec(z3)));
  l.set_pmap(z1, l.basis_vec(z1));
  l.set_pmap(z2, scale(f, alpha, l.basis_vec(z1)));
  l.set_pmap(z3, scale(f, beta, l.basis_vec(z1)));
  verify(l, "example-7-1");
  return l;
}

RestrictedLieAlgebra example71_extended() {
  const RestrictedLieAlgebra l = example71();
  return l.base_change(adjoin_square_roots(l.field()));
}

RestrictedLieAlgebra random_instance(std::size_t n, const Field& f, std::uint64_t seed, RandomStats* stats,
                                     std::size_t budget) {
  if (n == 0 || n > EnvAlgebra::kMaxGenerators) throw Error(ErrorCode::BadParameters, "random instance size out of range");
  if (!f.is_finite()) throw Error(ErrorCode::UnsupportedField, "random instances need GF(2^k)");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution sparse(0.35);
  RandomStats local;
  RandomStats& st = stats ? *stats : local;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    ++st.attempts;
    // Half the drafts are triangular ([b_i, b_j] in the span of later vectors); the rest
    // also let b_0 act diagonally, which gives toral and non-nilpotent instances.
    const bool triangular = coin(rng);
    RestrictedLieAlgebra l(f, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!sparse(rng)) continue;
        Vec v = zero_vec(n);
        if (triangular) {
          if (j + 1 >= n) continue;
          std::uniform_int_distribution<std::size_t> tgt(j + 1, n - 1);
          v[tgt(rng)] = f.random(rng);
        } else if (i == 0 && coin(rng)) {
          v[j] = f.one();
        } else {
          v = sparse_random(f, n, 1, rng);
        }
        if (!is_zero(v)) l.set_bracket(i, j, v);
      }
    if (!l.check_lie_axioms().ok()) continue;
    // The power map must satisfy ad(b_i^[2]) = ad(b_i)^2; it is fixed up to the center.
    const Subspace z = l.center();
    // Solve sum_c p_c ad(b_c) = ad(b_i)^2 as a linear system in p (n^2 equations).
    Matrix sys(f, n * n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const Matrix ac = l.ad(l.basis_vec(c));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) sys.at(r * n + s, c) = ac.at(r, s);
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Matrix a = l.ad(l.basis_vec(i));
      const Matrix a2 = a * a;
      Vec rhs(n * n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) rhs[r * n + s] = a2.at(r, s);
      std::optional<Vec> p = solve(sys, rhs);
      if (!p) {
        ok = false;
        break;
      }
      Vec val = *p;
      for (const auto& zb : z.basis())
        if (coin(rng)) axpy(f, f.random(rng), zb, val);
      l.set_pmap(i, val);
    }
    if (!ok || !l.check_axioms().ok()) continue;
    ++st.accepted;
    return l;
  }
  throw Error(ErrorCode::GenerationBudgetExceeded, "no valid draft within budget");
}

RestrictedLieAlgebra make(const FamilySpec& spec) {
  if (spec.tag == FamilyTag::Example71) return example71();
  if (spec.tag == FamilyTag::Example71Extended) return example71_extended();
  if (spec.field.kind != FieldKind::GF2k) throw Error(ErrorCode::UnsupportedField, "family needs GF(2^k)");
  const Field f(spec.field);
  switch (spec.tag) {
    case FamilyTag::FamI: return fam_i(f, spec.size, spec.variant);
    case FamilyTag::FamII: return fam_ii(f, spec.size, spec.variant);
    case FamilyTag::FamIII: return fam_iii(f, spec.size, spec.variant);
    case FamilyTag::FamIV: return fam_iv(f, spec.size);
    case FamilyTag::FamV: return fam_v(f, spec.size);
    case FamilyTag::Heisenberg: return heisenberg(f);
    case FamilyTag::NegativeClass2: return n7(f);
    case FamilyTag::WitnessChain: return witness_chain(f, spec.size);
    case FamilyTag::Random: return random_instance(spec.size, f, spec.seed);
    default: break;
  }
  throw Error(ErrorCode::BadParameters, "unknown family");
}

std::string Example71Report::to_string() const {
  std::ostringstream os;
  os << "part 1: [[x, x*x1], [x1, x1*x2*x3], x2] = " << obstruction_text << "\n";
  os << "  nonzero: " << (obstruction_nonzero ? "yes" : "no") << "\n";
  os << "part 2: v = " << v_text << ", w = " << w_text << "\n";
  os << "  central: " << (j_central ? "yes" : "no") << ", restricted ideal: " << (j_restricted_ideal ? "yes" : "no")
     << ", 2-nilpotent: " << (j_2nilpotent ? "yes" : "no") << "\n";
  os << "part 3: I = " << ideal_text << " in L/J (dim " << quotient_dim << ")\n";
  os << "  dim I: " << ideal_dim << ", abelian: " << (ideal_abelian ? "yes" : "no")
     << ", codim 1: " << (ideal_codim1 ? "yes" : "no") << "\n";
  return os.str();
}

Example71Report example_7_1_report() {
  Example71Report rep;
  const RestrictedLieAlgebra base = example71();
  {
    const EnvAlgebra u(base);
    const EnvElement x = u.gen(0), x1 = u.gen(1), x2 = u.gen(2), x3 = u.gen(3);
    const EnvElement inner1 = u.bracket(x, u.mul(x, x1));
    const EnvElement inner2 = u.bracket(x1, u.mul(u.mul(x1, x2), x3));
    rep.obstruction = u.bracket(u.bracket(inner1, inner2), x2);
    rep.obstruction_text = u.format(rep.obstruction);
    rep.obstruction_nonzero = !rep.obstruction.is_zero();
  }

  const RestrictedLieAlgebra ext = example71_extended();
  const Field& f = ext.field();
  // After X -> X^2, Y -> Y^2 the images of alpha, beta are X^2, Y^2 with roots X, Y.
  const Scalar a1 = f.from_rat(RationalFunction::parse("X"));
  const Scalar b1 = f.from_rat(RationalFunction::parse("Y"));
  const Scalar alpha = f.square(a1), beta = f.square(b1);
  auto e = [&](std::size_t i) { return ext.basis_vec(i); };
  const Vec v = add(f, scale(f, a1, e(4)), e(5));
  const Vec w = add(f, scale(f, b1, e(4)), e(6));
  rep.v_text = ext.format(v);
  rep.w_text = ext.format(w);
  const Subspace j = ext.span({v, w});
  rep.j_central = ext.center().contains(j);
  rep.j_restricted_ideal = ext.is_restricted_ideal(j);
  rep.j_2nilpotent = rep.j_restricted_ideal && ext.is_2nilpotent(j).nilpotent;
  if (!rep.j_restricted_ideal) return rep;

  const auto q = ext.quotient(j);
  const RestrictedLieAlgebra& lq = q.algebra;
  rep.quotient_dim = lq.dim();
  std::vector<Vec> gens = {q.coords.project(e(0)), q.coords.project(add(f, scale(f, alpha, e(1)), e(2))),
                           q.coords.project(add(f, scale(f, beta, e(1)), e(3)))};
  const Subspace ideal = lq.restricted_closure(gens).space;
  rep.ideal_dim = ideal.dim();
  rep.ideal_abelian = lq.is_abelian(ideal);
  rep.ideal_codim1 = ideal.dim() + 1 == lq.dim();
  std::ostringstream os;
  os << "span(";
  for (std::size_t i = 0; i < ideal.basis().size(); ++i) os << (i ? ", " : "") << lq.format(ideal.basis()[i]);
  os << ")";
  rep.ideal_text = os.str();
  return rep;
}

}  // namespace u2::families
