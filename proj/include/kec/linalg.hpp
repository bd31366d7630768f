#pragma once

#include "kec/rational.hpp"

#include <optional>
#include <vector>

namespace kec {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row major, rectangular

// Rank over the rationals (exact Gaussian elimination).
int rat_rank(RatMat a);

// Unique solution of a square nonsingular system; nullopt when singular.
std::optional<RatVec> rat_solve_square(RatMat a, RatVec b);

// A nonzero x with A x = 0, or nullopt when the columns are independent.
std::optional<RatVec> rat_null_vector(const RatMat& a, int ncols);

// Greedily extends `chosen` (column indices into a, assumed independent) to a
// maximal independent set, preferring candidates in the order given.
std::vector<int> rat_extend_basis(const RatMat& a, int ncols,
                                  std::vector<int> chosen,
                                  const std::vector<int>& candidates);

} // namespace kec
