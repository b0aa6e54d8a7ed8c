#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "u2/field.hpp"
#include "u2/matrix.hpp"
#include "u2/resla.hpp"

namespace u2::test {

inline Field gf2() { return Field::gf2(); }
inline Field gf4() { return Field::gf2k(2, 0b111); }
inline Field gf16() { return Field::gf2k(4, 0b10011); }

inline Vec vec(const Field& f, std::initializer_list<std::uint64_t> bits) {
  Vec v;
  for (auto b : bits) v.push_back(f.from_bits(b));
  return v;
}

inline Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& s : v) s = f.random(rng);
  return v;
}

/// Copy of l with one structure constant toggled by `delta` in coordinate `k` of [b_i, b_j].
inline RestrictedLieAlgebra mutate_bracket(const RestrictedLieAlgebra& l, std::size_t i, std::size_t j, std::size_t k,
                                           const Scalar& delta) {
  RestrictedLieAlgebra m = l;
  Vec v = l.bracket_basis(i, j);
  v[k] = l.field().add(v[k], delta);
  m.set_bracket(i, j, v);
  return m;
}

}  // namespace u2::test
