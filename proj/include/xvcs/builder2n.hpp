#pragma once

#include <vector>

#include "xvcs/scheme.hpp"

namespace xvcs {

// Black target matrix for the optimal pairwise scheme on n participants:
// (n-1) rows, ceil(log2 n) columns. Every contiguous row range XORs to a
// nonzero vector, and the n prefix parities are pairwise distinct, which is
// exactly what makes every pair reconstruct a fixed nonzero stack.
BitMatrix optimal_2n_rhs(int n);

// One pass of the iteration, returning the target for every participant
// count 2..n (entry i is the matrix for n = i + 2).
std::vector<BitMatrix> optimal_2n_rhs_prefixes(int n);

// Chain coefficient matrix with rows {i, i+1}.
QualifiedMatrix path_matrix(int n);

// The complete optimal (2,n) scheme: chain system, zero white target,
// declared qualified sets = all pairs. Pixel expansion ceil(log2 n), average
// contrast floor(n/2)*ceil(n/2)/C(n,2), noise-free reconstruction.
LinearScheme build_optimal_2n(int n);

}  // namespace xvcs
