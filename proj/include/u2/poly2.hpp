#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace u2 {

/// Dense univariate polynomial over GF(2), bit i = coefficient of t^i.
/// Always trimmed: the top word is nonzero unless the polynomial is zero.
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(std::uint64_t bits);

  static Poly2 monomial(int degree);

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return words_.size() == 1 && words_[0] == 1; }
  int degree() const;  // -1 for zero
  bool coeff(int i) const;
  void set_coeff(int i, bool v);

  Poly2& operator+=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2&, const Poly2&) = default;
  friend auto operator<=>(const Poly2& a, const Poly2& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  Poly2 shifted(int s) const;
  /// Quotient and remainder; throws DivisionByZero on zero divisor.
  std::pair<Poly2, Poly2> divmod(const Poly2& d) const;
  static Poly2 gcd(Poly2 a, Poly2 b);

  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

}  // namespace u2
