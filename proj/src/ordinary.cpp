#include "u2/ordinary.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "u2/error.hpp"

namespace u2::ordinary {

namespace {

constexpr int kMaxEnumerableDegree = 16;

std::atomic<std::uint64_t> next_algebra_id{1};

void add_into(const Field& f, std::map<Exponents, Scalar>& t, const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.emplace(e, c);
  if (inserted) return;
  it->second = f.add(it->second, c);
  if (it->second.is_zero()) t.erase(it);
}

std::size_t degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), std::size_t{0}); }

}  // namespace

std::size_t UEnvElement::degree() const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, degree_of(e));
  return d;
}

UEnvAlgebra::UEnvAlgebra(LieAlgebra lie) : lie_(std::move(lie)), id_(next_algebra_id++) {}

UEnvElement UEnvAlgebra::wrap(Terms t) const {
  UEnvElement r;
  r.terms = std::move(t);
  r.owner = id_;
  return r;
}

void UEnvAlgebra::check_owner(const UEnvElement& a) const {
  if (a.owner != 0 && a.owner != id_) throw Error(ErrorCode::AlgebraMismatch, "element belongs to another U(L)");
}

UEnvElement UEnvAlgebra::zero() const { return wrap({}); }

UEnvElement UEnvAlgebra::one() const { return monomial(Exponents(generators(), 0), field().one()); }

UEnvElement UEnvAlgebra::monomial(const Exponents& e, const Scalar& c) const {
  if (e.size() != generators()) throw Error(ErrorCode::DimensionMismatch, "exponent vector length mismatch");
  Terms t;
  if (!c.is_zero()) t.emplace(e, c);
  return wrap(std::move(t));
}

UEnvElement UEnvAlgebra::gen(std::size_t i) const {
  if (i >= generators()) throw Error(ErrorCode::IndexOutOfRange, "generator index out of range");
  Exponents e(generators(), 0);
  e[i] = 1;
  return monomial(e, field().one());
}

UEnvElement UEnvAlgebra::from_lie(const Vec& v) const {
  if (v.size() != generators()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from dim L");
  Terms t;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Exponents e(generators(), 0);
    e[i] = 1;
    t.emplace(std::move(e), v[i]);
  }
  return wrap(std::move(t));
}

UEnvElement UEnvAlgebra::add(const UEnvElement& a, const UEnvElement& b) const {
  check_owner(a);
  check_owner(b);
  Terms t = a.terms;
  for (const auto& [e, c] : b.terms) add_into(field(), t, e, c);
  return wrap(std::move(t));
}

UEnvElement UEnvAlgebra::scale(const Scalar& c, const UEnvElement& a) const {
  check_owner(a);
  Terms t;
  if (c.is_zero()) return wrap(std::move(t));
  for (const auto& [e, x] : a.terms) t.emplace(e, field().mul(c, x));
  return wrap(std::move(t));
}

const UEnvAlgebra::Terms& UEnvAlgebra::mono_times_gen(const Exponents& m, std::size_t i) const {
  auto key = std::make_pair(m, i);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const Field& f = field();
  Terms out;
  std::size_t j = m.size();
  for (std::size_t k = m.size(); k-- > 0;)
    if (m[k] != 0) {
      j = k;
      break;
    }
  if (j == m.size() || j <= i) {
    Exponents e = m;
    ++e[i];
    out.emplace(std::move(e), f.one());
  } else {
    // rest b_j b_i = (rest b_i) b_j + rest [b_j, b_i]
    Exponents rest = m;
    --rest[j];
    const Terms first = mono_times_gen(rest, i);
    for (const auto& [e, c] : first)
      for (const auto& [e2, c2] : mono_times_gen(e, j)) add_into(f, out, e2, f.mul(c, c2));
    const Vec br = lie_.bracket_basis(j, i);
    for (std::size_t k = 0; k < br.size(); ++k) {
      if (br[k].is_zero()) continue;
      for (const auto& [e2, c2] : mono_times_gen(rest, k)) add_into(f, out, e2, f.mul(br[k], c2));
    }
  }
  return memo_.emplace(std::move(key), std::move(out)).first->second;
}

UEnvElement UEnvAlgebra::mul(const UEnvElement& a, const UEnvElement& b) const {
  check_owner(a);
  check_owner(b);
  const Field& f = field();
  Terms out;
  for (const auto& [eb, cb] : b.terms) {
    Terms cur;
    for (const auto& [ea, ca] : a.terms) cur.emplace(ea, f.mul(ca, cb));
    for (std::size_t i = 0; i < eb.size(); ++i)
      for (std::uint32_t r = 0; r < eb[i]; ++r) {
        Terms next;
        for (const auto& [e, c] : cur)
          for (const auto& [e2, c2] : mono_times_gen(e, i)) add_into(f, next, e2, f.mul(c, c2));
        cur = std::move(next);
      }
    for (const auto& [e, c] : cur) add_into(f, out, e, c);
  }
  return wrap(std::move(out));
}

UEnvElement UEnvAlgebra::bracket(const UEnvElement& a, const UEnvElement& b) const {
  return add(mul(a, b), mul(b, a));
}

UEnvElement UEnvAlgebra::pow(const UEnvElement& a, std::uint64_t e) const {
  UEnvElement r = one();
  UEnvElement base = a;
  while (e) {
    if (e & 1u) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

std::optional<Vec> UEnvAlgebra::to_lie(const UEnvElement& a) const {
  Vec v = zero_vec(generators());
  for (const auto& [e, c] : a.terms) {
    if (degree_of(e) != 1) return std::nullopt;
    const auto i = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1u) - e.begin());
    v[i] = c;
  }
  return v;
}

UEnvElement UEnvAlgebra::random(std::mt19937_64& rng, std::size_t max_degree, std::size_t terms) const {
  Terms t;
  const std::size_t n = generators();
  if (n == 0) return one();
  std::uniform_int_distribution<std::size_t> deg(0, max_degree), idx(0, n - 1);
  for (std::size_t k = 0; k < terms; ++k) {
    Exponents e(n, 0);
    const std::size_t d = deg(rng);
    for (std::size_t r = 0; r < d; ++r) ++e[idx(rng)];
    add_into(field(), t, e, field().random(rng));
  }
  return wrap(std::move(t));
}

std::string UEnvAlgebra::format(const UEnvElement& a) const {
  if (a.is_zero()) return "0";
  const Field& f = field();
  std::string s;
  for (const auto& [e, c] : a.terms) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += lie_.names()[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
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

UEnvElement u_normal_mul(const UEnvAlgebra& u, const UEnvElement& a, const UEnvElement& b) { return u.mul(a, b); }

// ---------------------------------------------------------------- structure tests

std::optional<Subspace> abelian_codim1_ideal(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  if (l.is_abelian()) return l.whole();
  auto accept = [&](const Subspace& a) -> std::optional<Subspace> {
    if (a.dim() + 1 != n || !l.is_abelian(a) || !l.is_ideal(a)) return std::nullopt;
    return a;
  };
  // An abelian hyperplane ideal contains L' and so lies in C(L').
  const Subspace c = l.centralizer(l.derived());
  if (!(c == l.whole())) return accept(c);
  // L' is central: such an ideal contains Z and equals C(h) for any h in it outside Z.
  const std::vector<Vec> reps = Quotient(l.whole(), l.center()).lifts();
  if (reps.size() < 2) return std::nullopt;
  if (auto a = accept(l.centralizer(l.span({reps[1]})))) return a;
  const Field& f = l.field();
  if (!f.is_finite() || f.degree() > kMaxEnumerableDegree)
    throw Error(ErrorCode::UnsupportedField, "hyperplane enumeration needs GF(2^k) with k <= 16");
  for (const auto& s : f.elements()) {
    Vec h = reps[0];
    axpy(f, s, reps[1], h);
    if (auto a = accept(l.centralizer(l.span({h})))) return a;
  }
  return std::nullopt;
}

LieAlgebra base_change(const LieAlgebra& l, const Embedding& e) {
  if (!(e.source() == l.field())) throw Error(ErrorCode::FieldMismatch, "embedding source differs from the algebra's field");
  LieAlgebra out(e.target(), l.dim(), l.names());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      const Vec& v = l.bracket_basis(i, j);
      Vec w(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) w[k] = e(v[k]);
      out.set_bracket(i, j, std::move(w));
    }
  return out;
}

std::string to_string(OrdTag t) {
  switch (t) {
    case OrdTag::Abelian: return "Abelian";
    case OrdTag::AbelianCodim1: return "AbelianCodim1";
    case OrdTag::Class2Codim3: return "Class2Codim3";
    case OrdTag::TwoEigenvectors: return "TwoEigenvectors";
  }
  return "?";
}

namespace {

const Vec* find_element(const OrdCertificate& c, const std::string& name) {
  for (const auto& [n, v] : c.elements)
    if (n == name) return &v;
  return nullptr;
}

bool class_le2(const LieAlgebra& l) { return l.bracket_span(l.derived(), l.whole()).is_zero(); }

std::optional<OrdCertificate> match_class2(const LieAlgebra& l) {
  if (!class_le2(l)) return std::nullopt;
  const std::vector<Vec> reps = Quotient(l.whole(), l.center()).lifts();
  if (reps.size() != 3) return std::nullopt;
  OrdCertificate c;
  c.tag = OrdTag::Class2Codim3;
  for (std::size_t i = 0; i < 3; ++i) c.elements.emplace_back("x" + std::to_string(i + 1), reps[i]);
  c.relations = {"[L',L] = 0", "dim L/Z = 3"};
  return c;
}

/// L = <x1, x2, y> + Z with y acting as the identity on x1, x2.
std::optional<OrdCertificate> match_two_eigenvectors(const LieAlgebra& l) {
  const Field& f = l.field();
  const Subspace z = l.center();
  const Subspace m = l.derived().sum(z);
  if (m.dim() + 1 != l.dim() || m.dim() != z.dim() + 2) return std::nullopt;
  if (!z.contains(l.bracket_span(m, m))) return std::nullopt;
  const Quotient qm(m, z);
  const Vec y0 = Quotient(l.whole(), m).lifts().at(0);
  std::optional<Scalar> lambda;
  for (std::size_t i = 0; i < qm.dim(); ++i) {
    const Vec c = qm.project(l.bracket(y0, qm.lifts()[i]));
    if (!lambda) lambda = c[i];
    if (lambda->is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!(c[j] == (i == j ? *lambda : f.zero()))) return std::nullopt;
  }
  const Vec y = scale(f, f.inv(*lambda), y0);
  OrdCertificate c;
  c.tag = OrdTag::TwoEigenvectors;
  for (std::size_t i = 0; i < 2; ++i) {
    Vec e = l.bracket(qm.lifts()[i], y);
    if (!(l.bracket(e, y) == e)) return std::nullopt;
    c.elements.emplace_back("x" + std::to_string(i + 1), std::move(e));
  }
  c.elements.emplace_back("y", y);
  c.relations = {"[x1,y] = x1", "[x2,y] = x2", "[x1,x2] in Z", "L = <x1,x2,y> + Z"};
  return c;
}

}  // namespace

bool verify_certificate(const LieAlgebra& l, const OrdCertificate& c) {
  switch (c.tag) {
    case OrdTag::Abelian: return l.is_abelian();
    case OrdTag::AbelianCodim1:
      return c.ideal && c.ideal->dim() + 1 >= l.dim() && l.is_abelian(*c.ideal) && l.is_ideal(*c.ideal);
    case OrdTag::Class2Codim3:
      return class_le2(l) && l.center().dim() + 3 == l.dim();
    case OrdTag::TwoEigenvectors: {
      const Vec* x1 = find_element(c, "x1");
      const Vec* x2 = find_element(c, "x2");
      const Vec* y = find_element(c, "y");
      if (!x1 || !x2 || !y) return false;
      const Subspace z = l.center();
      if (!(l.bracket(*x1, *y) == *x1) || !(l.bracket(*x2, *y) == *x2)) return false;
      if (!z.contains(l.bracket(*x1, *x2))) return false;
      const Subspace s = l.span({*x1, *x2, *y});
      return s.dim() == 3 && s.intersect(z).is_zero() && s.sum(z) == l.whole();
    }
  }
  return false;
}

// ---------------------------------------------------------------- witness search

namespace {

Witness make_witness(const UEnvAlgebra& u, std::string pattern, std::vector<UEnvElement> args, UEnvElement value) {
  Witness w;
  w.pattern = std::move(pattern);
  w.text = "[[" + u.format(args[0]) + ", " + u.format(args[1]) + "], [" + u.format(args[2]) + ", " +
           u.format(args[3]) + "], " + u.format(args[4]) + "] = " + u.format(value);
  w.arguments = std::move(args);
  w.value = std::move(value);
  return w;
}

UEnvElement three_step(const UEnvAlgebra& u, const std::vector<UEnvElement>& a) {
  return u.bracket(u.bracket(u.bracket(a[0], a[1]), u.bracket(a[2], a[3])), a[4]);
}

std::vector<UEnvElement> four_tuple_args(const UEnvAlgebra& u, const UEnvElement& x1, const UEnvElement& x2,
                                         const UEnvElement& x3, const UEnvElement& x4) {
  return {u.mul(u.mul(x4, x3), x1), x4, u.mul(x4, x1), x1, x2};
}

struct Arg {
  UEnvElement value;
  std::size_t degree;
};

/// Products of the generators in nondecreasing index order, degrees 1..max_degree.
std::vector<Arg> monomial_args(const UEnvAlgebra& u, const std::vector<UEnvElement>& gens, std::size_t max_degree) {
  std::vector<Arg> out;
  std::vector<std::pair<UEnvElement, std::size_t>> frontier;  // (product, last index)
  for (std::size_t i = 0; i < gens.size(); ++i) frontier.emplace_back(gens[i], i);
  for (std::size_t d = 1; d <= max_degree && !frontier.empty(); ++d) {
    std::vector<std::pair<UEnvElement, std::size_t>> next;
    for (const auto& [p, last] : frontier) {
      out.push_back({p, d});
      if (d < max_degree)
        for (std::size_t i = last; i < gens.size(); ++i) next.emplace_back(u.mul(p, gens[i]), i);
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

Witness four_tuple_pattern(const UEnvAlgebra& u, std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4) {
  auto args = four_tuple_args(u, u.gen(x1), u.gen(x2), u.gen(x3), u.gen(x4));
  UEnvElement v = three_step(u, args);
  return make_witness(u, "four-tuple", std::move(args), std::move(v));
}

WitnessResult witness_search(const LieAlgebra& l, const WitnessBudget& budget) {
  WitnessResult res;
  if (l.is_abelian()) return res;
  const UEnvAlgebra u(l);
  // Central factors pull out of commutators and U(L) has no zero divisors, so arguments
  // are built from representatives of L/Z only.
  std::vector<UEnvElement> gens;
  const Quotient q(l.whole(), l.center());
  for (const auto& r : q.lifts()) gens.push_back(u.from_lie(r));
  auto spend = [&]() {
    if (res.evaluations >= budget.max_evaluations) {
      res.budget_hit = true;
      return false;
    }
    ++res.evaluations;
    return true;
  };

  // Four-tuple pattern over ordered tuples of distinct representatives.
  if (budget.depth >= 3 && budget.degree >= 8) {
    const std::size_t g = gens.size();
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b)
        for (std::size_t c = 0; c < g; ++c)
          for (std::size_t d = 0; d < g; ++d) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            if (!spend()) return res;
            auto args = four_tuple_args(u, gens[a], gens[b], gens[c], gens[d]);
            UEnvElement v = three_step(u, args);
            if (!v.is_zero()) {
              res.witness = make_witness(u, "four-tuple", std::move(args), std::move(v));
              return res;
            }
          }
  }

  // General [[a,b],[c,d],e] over monomials, by increasing total degree.
  const std::vector<Arg> args = monomial_args(u, gens, budget.depth);
  struct Comm {
    std::size_t a, b, degree;
    UEnvElement value;
  };
  std::vector<Comm> comms;
  for (std::size_t a = 0; a < args.size(); ++a)
    for (std::size_t b = a + 1; b < args.size(); ++b) {
      if (args[a].degree + args[b].degree + 3 > budget.degree) continue;
      if (!spend()) return res;
      UEnvElement c = u.bracket(args[a].value, args[b].value);
      if (!c.is_zero()) comms.push_back({a, b, args[a].degree + args[b].degree, std::move(c)});
    }
  std::map<std::pair<std::size_t, std::size_t>, UEnvElement> inner;
  for (std::size_t total = 5; total <= budget.degree; ++total)
    for (std::size_t p = 0; p < comms.size(); ++p)
      for (std::size_t q = p + 1; q < comms.size(); ++q) {
        const std::size_t pq = comms[p].degree + comms[q].degree;
        if (pq + 1 > total) continue;
        auto it = inner.find({p, q});
        if (it == inner.end()) {
          if (!spend()) return res;
          it = inner.emplace(std::make_pair(p, q), u.bracket(comms[p].value, comms[q].value)).first;
        }
        if (it->second.is_zero()) continue;
        for (const auto& e : args) {
          if (pq + e.degree != total) continue;
          if (!spend()) return res;
          UEnvElement v = u.bracket(it->second, e.value);
          if (v.is_zero()) continue;
          res.witness = make_witness(u, "three-step",
                                     {args[comms[p].a].value, args[comms[p].b].value, args[comms[q].a].value,
                                      args[comms[q].b].value, e.value},
                                     std::move(v));
          return res;
        }
      }
  return res;
}

// ---------------------------------------------------------------- classifier

std::string to_string(OrdOutcome o) {
  switch (o) {
    case OrdOutcome::Solvable: return "Solvable";
    case OrdOutcome::NotSolvable: return "NotSolvable";
    case OrdOutcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string OrdVerdict::summary() const {
  switch (outcome) {
    case OrdOutcome::Solvable: return "Solvable (" + to_string(certificate->tag) + ")";
    case OrdOutcome::NotSolvable:
      return std::string("NotSolvable (no condition holds") + (witness ? "; witness " + witness->pattern : "") + ")";
    case OrdOutcome::Inconclusive: return "Inconclusive (" + detail + ")";
  }
  return "?";
}

OrdVerdict corollary_classify(const LieAlgebra& l, const WitnessBudget& budget) {
  OrdVerdict v;
  auto solvable = [&](OrdCertificate c) {
    v.outcome = OrdOutcome::Solvable;
    v.certificate = std::move(c);
    return v;
  };
  if (l.is_abelian()) {
    OrdCertificate c;
    c.tag = OrdTag::Abelian;
    c.ideal = l.whole();
    c.relations = {"[L,L] = 0"};
    return solvable(std::move(c));
  }
  try {
    if (auto a = abelian_codim1_ideal(l)) {
      OrdCertificate c;
      c.tag = OrdTag::AbelianCodim1;
      c.ideal = *a;
      c.relations = {"A abelian", "A ideal", "codim A = 1"};
      return solvable(std::move(c));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedField) throw;
    if (auto c = match_class2(l)) return solvable(std::move(*c));
    if (auto c = match_two_eigenvectors(l)) return solvable(std::move(*c));
    WitnessResult w = witness_search(l, budget);
    if (w.witness) {
      v.outcome = OrdOutcome::NotSolvable;
      v.detail = w.witness->text;
      v.witness = std::move(w.witness);
      return v;
    }
    v.outcome = OrdOutcome::Inconclusive;
    v.detail = "abelian hyperplane ideal undecided over this field";
    return v;
  }
  if (auto c = match_class2(l)) return solvable(std::move(*c));
  if (auto c = match_two_eigenvectors(l)) return solvable(std::move(*c));
  v.outcome = OrdOutcome::NotSolvable;
  v.conditions_fail = true;
  WitnessResult w = witness_search(l, budget);
  v.witness = std::move(w.witness);
  v.detail = v.witness ? v.witness->text : "no witness within budget";
  return v;
}

// ---------------------------------------------------------------- 2-envelope

namespace {

struct MonomialIndex {
  std::map<Exponents, std::size_t> index;
  std::vector<Exponents> monos;

  void add(const UEnvElement& x) {
    for (const auto& [e, c] : x.terms)
      if (index.emplace(e, monos.size()).second) monos.push_back(e);
  }
  Vec to_vec(const UEnvElement& x) const {
    Vec v = zero_vec(monos.size());
    for (const auto& [e, c] : x.terms) v[index.at(e)] = c;
    return v;
  }
};

}  // namespace

USpan span_in_u(const UEnvAlgebra& u, const std::vector<UEnvElement>& elements) {
  MonomialIndex mi;
  for (const auto& x : elements) mi.add(x);
  std::vector<Vec> rows;
  for (const auto& x : elements) rows.push_back(mi.to_vec(x));
  const Subspace s = Subspace::span(u.field(), mi.monos.size(), std::move(rows));
  USpan out;
  for (const auto& row : s.basis()) {
    UEnvElement x = u.zero();
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!row[i].is_zero()) x.terms.emplace(mi.monos[i], row[i]);
    out.basis.push_back(std::move(x));
  }
  return out;
}

bool span_contains(const UEnvAlgebra& u, const USpan& s, const UEnvElement& x) {
  std::vector<UEnvElement> all = s.basis;
  all.push_back(x);
  return span_in_u(u, all).dim() == s.dim();
}

TwoEnvelope two_envelope(const LieAlgebra& l, std::size_t m_max) {
  const UEnvAlgebra u(l);
  TwoEnvelope out;
  std::vector<UEnvElement> gens;
  for (std::size_t i = 0; i < l.dim(); ++i) gens.push_back(u.gen(i));
  out.spans.push_back(span_in_u(u, gens));
  std::vector<UEnvElement> total = out.spans[0].basis;
  out.total_dims.push_back(total.size());
  for (std::size_t k = 1; k <= m_max; ++k) {
    const auto& prev = out.spans.back().basis;
    std::vector<UEnvElement> next;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next.push_back(u.mul(prev[i], prev[i]));
      for (std::size_t j = i + 1; j < prev.size(); ++j) next.push_back(u.bracket(prev[i], prev[j]));
    }
    out.spans.push_back(span_in_u(u, next));
    std::vector<UEnvElement> grown = total;
    grown.insert(grown.end(), out.spans.back().basis.begin(), out.spans.back().basis.end());
    const USpan t = span_in_u(u, grown);
    out.total_dims.push_back(t.dim());
    const bool stable = t.dim() == total.size();
    total = t.basis;
    if (stable) {
      out.stabilized = true;
      break;
    }
  }
  if (!out.stabilized) return out;

  // Read brackets and squares of the finite span off in U(L).
  const std::size_t d = total.size();
  MonomialIndex mi;
  for (const auto& x : total) mi.add(x);
  std::vector<Vec> cols;
  for (const auto& x : total) cols.push_back(mi.to_vec(x));
  auto coords = [&](const UEnvElement& x) {
    MonomialIndex check = mi;
    check.add(x);
    if (check.monos.size() != mi.monos.size()) throw Error(ErrorCode::NotASubspace, "element outside the 2-envelope");
    const Matrix m = Matrix::from_columns(u.field(), mi.monos.size(), cols);
    auto sol = solve(m, mi.to_vec(x));
    if (!sol) throw Error(ErrorCode::NotASubspace, "element outside the 2-envelope");
    return *sol;
  };
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back("u" + std::to_string(i + 1));
  RestrictedLieAlgebra hat(u.field(), d, names);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) hat.set_bracket(i, j, coords(u.bracket(total[i], total[j])));
    hat.set_pmap(i, coords(u.mul(total[i], total[i])));
  }
  out.algebra = std::move(hat);
  return out;
}

// ---------------------------------------------------------------- descent

DescentReport descent_abelian_codim1(const LieAlgebra& l, const Embedding& extension) {
  DescentReport r;
  r.base_ideal = abelian_codim1_ideal(l);
  r.extension_ideal = abelian_codim1_ideal(base_change(l, extension));
  r.base_has = r.base_ideal.has_value();
  r.extension_has = r.extension_ideal.has_value();
  r.implication_holds = !r.extension_has || r.base_has;
  return r;
}

// ---------------------------------------------------------------- example algebras

LieAlgebra abelian(const Field& f, std::size_t n) { return LieAlgebra(f, n); }

LieAlgebra heisenberg(const Field& f) {
  LieAlgebra l(f, 3, {"e1", "e2", "e3"});
  l.set_bracket(0, 1, unit_vec(f, 3, 2));
  return l;
}

LieAlgebra free_class2(const Field& f, std::size_t g) {
  const std::size_t n = g + g * (g - 1) / 2;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g; ++i) names.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) names.push_back("z" + std::to_string(i + 1) + std::to_string(j + 1));
  LieAlgebra l(f, n, names);
  std::size_t k = g;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) l.set_bracket(i, j, unit_vec(f, n, k++));
  return l;
}

LieAlgebra two_eigenvectors(const Field& f, std::size_t dim_z) {
  const std::size_t n = 3 + dim_z;
  std::vector<std::string> names = {"x1", "x2", "y"};
  for (std::size_t i = 0; i < dim_z; ++i) names.push_back("z" + std::to_string(i + 1));
  LieAlgebra l(f, n, names);
  l.set_bracket(0, 2, unit_vec(f, n, 0));
  l.set_bracket(1, 2, unit_vec(f, n, 1));
  if (dim_z >= 1) l.set_bracket(0, 1, unit_vec(f, n, 3));
  return l;
}

LieAlgebra affine_pair(const Field& f) {
  LieAlgebra l(f, 4, {"x1", "y1", "x2", "y2"});
  l.set_bracket(0, 1, unit_vec(f, 4, 0));
  l.set_bracket(2, 3, unit_vec(f, 4, 2));
  return l;
}

LieAlgebra random_metabelian(std::size_t n, const Field& f, std::uint64_t seed) {
  if (n == 0 || !f.is_finite()) throw Error(ErrorCode::BadParameters, "random_metabelian needs n >= 1 over GF(2^k)");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution sparse(0.5);
  auto coin_scalar = [&]() { return sparse(rng) ? f.random(rng) : f.zero(); };
  std::uniform_int_distribution<std::size_t> pick_a(1, std::max<std::size_t>(1, n - 1));
  const std::size_t a = n == 1 ? 1 : pick_a(rng);
  const std::size_t b = n - a;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < b; ++i) names.push_back("b" + std::to_string(i + 1));
  for (std::size_t i = 0; i < a; ++i) names.push_back("a" + std::to_string(i + 1));
  for (std::size_t attempt = 0; attempt < 10000; ++attempt) {
    // A = last a basis vectors, abelian; B acts through polynomials in one matrix, so the actions commute.
    Matrix r(f, a, a);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) r.at(i, j) = coin_scalar();
    const Matrix r2 = r * r;
    LieAlgebra l(f, n, names);
    for (std::size_t i = 0; i < b; ++i) {
      const Scalar c0 = coin_scalar(), c1 = coin_scalar(), c2 = coin_scalar();
      for (std::size_t j = 0; j < a; ++j) {
        Vec v = zero_vec(n);
        for (std::size_t k = 0; k < a; ++k) {
          Scalar s = f.add(f.mul(c1, r.at(k, j)), f.mul(c2, r2.at(k, j)));
          if (k == j) s = f.add(s, c0);
          v[b + k] = s;
        }
        l.set_bracket(i, b + j, std::move(v));
      }
      for (std::size_t j = i + 1; j < b; ++j) {
        Vec v = zero_vec(n);
        for (std::size_t k = 0; k < a; ++k) v[b + k] = coin_scalar();
        l.set_bracket(i, j, std::move(v));
      }
    }
    if (l.check_lie_axioms().ok()) return l;
  }
  throw Error(ErrorCode::GenerationBudgetExceeded, "no metabelian draft satisfied the Jacobi identity");
}

}  // namespace u2::ordinary
