#include "u2/ratfunc.hpp"

#include <algorithm>
#include <cctype>

#include "u2/error.hpp"

namespace u2 {

namespace {
const Poly2 kZeroPoly{};
}

BiPoly BiPoly::one() { return monomial(0, 0); }

BiPoly BiPoly::monomial(int dx, int dy) {
  BiPoly p;
  p.coeffs_.resize(static_cast<std::size_t>(dx) + 1);
  p.coeffs_[static_cast<std::size_t>(dx)] = Poly2::monomial(dy);
  return p;
}

void BiPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Poly2& BiPoly::coeff(int dx) const {
  if (dx < 0 || dx >= static_cast<int>(coeffs_.size())) return kZeroPoly;
  return coeffs_[static_cast<std::size_t>(dx)];
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs_.resize(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

std::strong_ordering operator<=>(const BiPoly& a, const BiPoly& b) {
  if (auto c = a.degree_x() <=> b.degree_x(); c != 0) return c;
  for (int i = a.degree_x(); i >= 0; --i) {
    if (auto c = a.coeff(i) <=> b.coeff(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

BiPoly BiPoly::times(const Poly2& c) const {
  BiPoly r;
  if (c.is_zero()) return r;
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& p : coeffs_) r.coeffs_.push_back(p * c);
  r.trim();
  return r;
}

BiPoly BiPoly::shifted_x(int s) const {
  if (is_zero()) return {};
  BiPoly r;
  r.coeffs_.assign(static_cast<std::size_t>(s), Poly2{});
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

Poly2 BiPoly::content() const {
  Poly2 g;
  for (const auto& p : coeffs_) g = Poly2::gcd(g, p);
  return g;
}

BiPoly BiPoly::primitive_part() const {
  if (is_zero()) return {};
  const Poly2 c = content();
  BiPoly r;
  for (const auto& p : coeffs_) r.coeffs_.push_back(p.divmod(c).first);
  return r;
}

BiPoly BiPoly::exact_div(const BiPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "bivariate division by zero");
  BiPoly q;
  BiPoly r = *this;
  while (!r.is_zero()) {
    const int s = r.degree_x() - d.degree_x();
    if (s < 0) throw Error(ErrorCode::PreconditionFailed, "inexact bivariate division");
    auto [cq, cr] = r.leading().divmod(d.leading());
    if (!cr.is_zero()) throw Error(ErrorCode::PreconditionFailed, "inexact bivariate division");
    BiPoly term;
    term.coeffs_.assign(static_cast<std::size_t>(s) + 1, Poly2{});
    term.coeffs_.back() = cq;
    q += term;
    r += d.times(cq).shifted_x(s);
  }
  return q;
}

BiPoly BiPoly::gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Poly2 c = Poly2::gcd(a.content(), b.content());
  BiPoly p = a.primitive_part();
  BiPoly q = b.primitive_part();
  if (p.degree_x() < q.degree_x()) std::swap(p, q);
  // Primitive polynomial remainder sequence in GF(2)[Y][X].
  while (!q.is_zero()) {
    BiPoly r = p;
    while (!r.is_zero() && r.degree_x() >= q.degree_x()) {
      const int s = r.degree_x() - q.degree_x();
      const Poly2 lr = r.leading();
      r = r.times(q.leading()) + q.times(lr).shifted_x(s);
    }
    p = std::move(q);
    q = r.primitive_part();
  }
  return p.times(c);
}

bool BiPoly::is_square() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Poly2& c = coeffs_[i];
    if (c.is_zero()) continue;
    if (i % 2 != 0) return false;
    for (int d = 1; d <= c.degree(); d += 2) {
      if (c.coeff(d)) return false;
    }
  }
  return true;
}

BiPoly BiPoly::sqrt() const {
  BiPoly r;
  for (std::size_t i = 0; i < coeffs_.size(); i += 2) {
    Poly2 c;
    for (int d = 0; d <= coeffs_[i].degree(); d += 2) {
      if (coeffs_[i].coeff(d)) c.set_coeff(d / 2, true);
    }
    r.coeffs_.push_back(std::move(c));
  }
  r.trim();
  return r;
}

BiPoly BiPoly::frobenius_substitute() const {
  BiPoly r;
  if (is_zero()) return r;
  r.coeffs_.resize(2 * coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Poly2 c;
    for (int d = 0; d <= coeffs_[i].degree(); ++d) {
      if (coeffs_[i].coeff(d)) c.set_coeff(2 * d, true);
    }
    r.coeffs_[2 * i] = std::move(c);
  }
  return r;
}

std::vector<std::pair<int, int>> BiPoly::terms() const {
  std::vector<std::pair<int, int>> out;
  for (int i = degree_x(); i >= 0; --i) {
    const Poly2& c = coeff(i);
    for (int d = c.degree(); d >= 0; --d) {
      if (c.coeff(d)) out.emplace_back(i, d);
    }
  }
  return out;
}

std::string BiPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (auto [dx, dy] : terms()) {
    if (!s.empty()) s += '+';
    std::string m;
    if (dx > 0) m += dx == 1 ? "X" : "X^" + std::to_string(dx);
    if (dy > 0) {
      if (!m.empty()) m += '*';
      m += dy == 1 ? "Y" : "Y^" + std::to_string(dy);
    }
    s += m.empty() ? "1" : m;
  }
  return s;
}

RationalFunction::RationalFunction(BiPoly num, BiPoly den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = BiPoly::one();
    return;
  }
  const BiPoly g = BiPoly::gcd(num, den);
  num_ = num.exact_div(g);
  den_ = den.exact_div(g);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero rational function");
  return {den_, num_};
}

RationalFunction RationalFunction::sqrt() const {
  if (!is_square()) throw Error(ErrorCode::NoSquareRoot, to_string() + " is not a square in F2(X,Y)");
  return {num_.sqrt(), den_.sqrt()};
}

RationalFunction RationalFunction::frobenius_substitute() const {
  return {num_.frobenius_substitute(), den_.frobenius_substitute()};
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

class RatParser {
 public:
  explicit RatParser(std::string_view s) : s_(s) {}

  RationalFunction parse() {
    RationalFunction v = quotient();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::SyntaxError,
                "rational function '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  RationalFunction quotient() {
    RationalFunction v = sum();
    while (accept('/')) v = v * sum().inverse();
    return v;
  }
  RationalFunction sum() {
    RationalFunction v = product();
    while (accept('+')) v = v + product();
    return v;
  }
  RationalFunction product() {
    RationalFunction v = factor();
    while (accept('*')) v = v * factor();
    return v;
  }
  RationalFunction factor() {
    skip_ws();
    if (accept('(')) {
      RationalFunction v = quotient();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == 'X' || c == 'Y') {
      ++pos_;
      int e = 1;
      if (accept('^')) e = integer();
      return RationalFunction(c == 'X' ? BiPoly::monomial(e, 0) : BiPoly::monomial(0, e));
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return c == '1' ? RationalFunction(BiPoly::one()) : RationalFunction();
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction RationalFunction::parse(std::string_view text) { return RatParser(text).parse(); }

}  // namespace u2
