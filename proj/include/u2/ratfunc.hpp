#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "u2/poly2.hpp"

namespace u2 {

/// Polynomial in GF(2)[X, Y], stored as a polynomial in X whose
/// coefficients are dense GF(2)[Y] polynomials.
class BiPoly {
 public:
  BiPoly() = default;
  static BiPoly one();
  static BiPoly monomial(int dx, int dy);
  static BiPoly x() { return monomial(1, 0); }
  static BiPoly y() { return monomial(0, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  int degree_x() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Poly2& coeff(int dx) const;
  const Poly2& leading() const { return coeffs_.back(); }

  BiPoly& operator+=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly&, const BiPoly&) = default;
  friend std::strong_ordering operator<=>(const BiPoly& a, const BiPoly& b);

  BiPoly times(const Poly2& c) const;
  BiPoly shifted_x(int s) const;
  Poly2 content() const;
  BiPoly primitive_part() const;
  /// Exact quotient; throws PreconditionFailed if d does not divide *this.
  BiPoly exact_div(const BiPoly& d) const;
  static BiPoly gcd(const BiPoly& a, const BiPoly& b);

  bool is_square() const;
  BiPoly sqrt() const;            // requires is_square()
  BiPoly frobenius_substitute() const;  // f(X, Y) -> f(X^2, Y^2)

  /// Exponent pairs (degX, degY) sorted descending lexicographically.
  std::vector<std::pair<int, int>> terms() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<Poly2> coeffs_;
};

/// Normalized element of GF(2)(X, Y): gcd(num, den) = 1, den != 0, zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(BiPoly::one()) {}
  explicit RationalFunction(BiPoly num) : num_(std::move(num)), den_(BiPoly::one()) {}
  RationalFunction(BiPoly num, BiPoly den);

  static RationalFunction parse(std::string_view text);

  const BiPoly& num() const { return num_; }
  const BiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  RationalFunction inverse() const;
  bool is_square() const { return num_.is_square() && den_.is_square(); }
  RationalFunction sqrt() const;
  RationalFunction frobenius_substitute() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
  friend std::strong_ordering operator<=>(const RationalFunction& a, const RationalFunction& b) {
    if (auto c = a.num_ <=> b.num_; c != 0) return c;
    return a.den_ <=> b.den_;
  }

  std::string to_string() const;

 private:
  BiPoly num_;
  BiPoly den_;
};

}  // namespace u2
