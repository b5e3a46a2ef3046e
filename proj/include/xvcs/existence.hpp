#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xvcs/access.hpp"
#include "xvcs/bitmatrix.hpp"

namespace xvcs {

struct ExistenceVerdict {
    bool exists = false;
    std::optional<int> minimal_m;
    std::optional<BitMatrix> certificate;  // t x minimal_m black target, white target zero
    bool minimal_m_is_exact = true;        // false when only the greedy upper bound was feasible
    std::string reason;
    std::optional<std::vector<int>> witness_rows;  // failing odd row subset (0-based)
    std::optional<int> forced_zero_row;            // row whose target is forced to zero (0-based)
};

// Pixel-expansion-1 decision: a scheme with a single subpixel exists iff no
// odd-size subset of qualified-matrix rows XORs to a forbidden bitset.
// Enumerates all odd subsets (Gray-code order); requires t <= 20.
ExistenceVerdict exists_expansion_one(const AccessStructure& s);

// Noise-free scheme decision (equivalently: perfect-white-reconstruction
// scheme, one-sided-static scheme — all equivalent in existence). Computes
// the span L of all row functionals forced to annihilate the black target by
// some maximal forbidden set; a scheme exists iff no standard basis vector
// lies in L. When it exists, minimal_m is the least number of vectors of the
// orthogonal complement whose supports cover every row, and the certificate
// stacks such a cover as columns.
ExistenceVerdict exists_sxvcs(const AccessStructure& s);

// Basis (t x 1 columns) of the space of admissible black-target columns: the
// columns orthogonal to every functional forced by some maximal forbidden
// set. Any black target whose columns lie in this span passes the security
// check; it passes contrast iff the columns jointly cover every row.
std::vector<BitMatrix> admissible_black_columns(const AccessStructure& s);

}  // namespace xvcs
