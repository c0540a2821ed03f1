#pragma once

#include "polyangle/rational.hpp"

#include <vector>

namespace polyangle {

using RatRow = std::vector<Rational>;
using RatMatrix = std::vector<RatRow>;

/** Exact rank via Gaussian elimination over the rationals. */
int matrix_rank(RatMatrix m);

/**
 * Basis of the right null space of an r x c matrix (vectors v with M v = 0).
 * The basis is produced from the reduced row echelon form, so it is
 * deterministic for a given input.
 */
std::vector<RatRow> nullspace(const RatMatrix& m, int cols);

}  // namespace polyangle
