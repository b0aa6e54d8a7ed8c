#include "u2/poly2.hpp"

#include <bit>

#include "u2/error.hpp"

namespace u2 {

Poly2::Poly2(std::uint64_t bits) {
  if (bits != 0) words_.push_back(bits);
}

Poly2 Poly2::monomial(int degree) {
  Poly2 p;
  p.set_coeff(degree, true);
  return p;
}

void Poly2::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int Poly2::degree() const {
  if (words_.empty()) return -1;
  return static_cast<int>(64 * (words_.size() - 1)) + 63 - std::countl_zero(words_.back());
}

bool Poly2::coeff(int i) const {
  const auto w = static_cast<std::size_t>(i / 64);
  if (i < 0 || w >= words_.size()) return false;
  return (words_[w] >> (i % 64)) & 1u;
}

void Poly2::set_coeff(int i, bool v) {
  const auto w = static_cast<std::size_t>(i / 64);
  if (w >= words_.size()) {
    if (!v) return;
    words_.resize(w + 1, 0);
  }
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (v) {
    words_[w] |= bit;
  } else {
    words_[w] &= ~bit;
    trim();
  }
}

Poly2& Poly2::operator+=(const Poly2& o) {
  if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
  for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
  trim();
  return *this;
}

Poly2 Poly2::shifted(int s) const {
  if (is_zero()) return {};
  Poly2 r;
  const std::size_t ws = static_cast<std::size_t>(s / 64);
  const int bs = s % 64;
  r.words_.assign(words_.size() + ws + 1, 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    r.words_[i + ws] ^= words_[i] << bs;
    if (bs != 0) r.words_[i + ws + 1] ^= words_[i] >> (64 - bs);
  }
  r.trim();
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  const int db = b.degree();
  for (int i = 0; i <= db; ++i) {
    if (b.coeff(i)) r += a.shifted(i);
  }
  return r;
}

std::pair<Poly2, Poly2> Poly2::divmod(const Poly2& d) const {
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Poly2 q;
  Poly2 r = *this;
  const int dd = d.degree();
  while (r.degree() >= dd) {
    const int s = r.degree() - dd;
    q.set_coeff(s, !q.coeff(s));
    r += d.shifted(s);
  }
  return {q, r};
}

Poly2 Poly2::gcd(Poly2 a, Poly2 b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace u2
