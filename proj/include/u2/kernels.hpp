#pragma once

#include <cstddef>
#include <vector>

#include "u2/envelope.hpp"

namespace u2::kernels {

/// Dense kernels handle GF(2^k), k <= 8, with at most kMaxDenseGenerators generators.
constexpr std::size_t kMaxDenseGenerators = 11;

bool dense_supported(const EnvAlgebra& u);
bool openmp_enabled();

/// Lie derived series of span(start) in u(L); start vectors have length dim u(L).
DerivedSeries derived_series(const EnvAlgebra& u, const std::vector<Vec>& start, std::size_t max_steps, bool parallel);

SzResult sz_nilpotency(const EnvAlgebra& u, bool parallel);

}  // namespace u2::kernels
