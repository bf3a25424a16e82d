#pragma once

#include <array>
#include <vector>

#include "trident/numbers.hpp"

namespace trident {

using IntMatrix = std::vector<std::vector<Int>>;

// Rank over Q of an integer matrix (fraction-free elimination).
int matrix_rank(IntMatrix m);

// Determinant of a square integer matrix (Bareiss).
Int matrix_det(IntMatrix m);

// One primitive integer kernel vector of m (rows x cols, solving m v = 0),
// or empty when the kernel is trivial.  Deterministic: uses the last free
// column of the echelon form.
std::vector<Int> kernel_vector(const IntMatrix& m);

// Divide by gcd and make the first nonzero entry positive.
void make_primitive(std::vector<Int>& v);

// Complete a primitive integer vector to a unimodular matrix whose LAST
// column is v (determinant +-1).  n = 2 or 3.
std::vector<std::vector<Int>> unimodular_complete(const std::vector<Int>& v);

// LLL reduction of the rows of basis (integer lattice), delta = 3/4,
// exact rational Gram data.
void lll_reduce(std::vector<std::vector<Int>>& basis);

// LLL with floating-point Gram data and exact integer row operations; fast
// and sound for candidate generation (callers verify candidates exactly).
void lll_reduce_fp(std::vector<std::vector<Int>>& basis);

}  // namespace trident
