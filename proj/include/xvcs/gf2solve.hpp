#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "xvcs/bitmatrix.hpp"

namespace xvcs {

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full description of the solution set of A*X = B over GF(2):
// every solution is particular + H where each column of H lies in the span
// of the nullspace basis. The basis is in the canonical reduced-echelon form
// (free variable set to 1, pivot variables filled from the reduced rows), so
// results are reproducible across runs.
struct SolveResult {
    bool consistent = false;
    int var_count = 0;   // n, height of X
    int rhs_cols = 0;    // m, width of X
    int rank = 0;
    BitMatrix particular;               // n x m, valid iff consistent
    std::vector<BitMatrix> nullspace;   // n x 1 columns, linearly independent

    int nullity() const { return var_count - rank; }
    // log2 of the solution set size, or -1 if inconsistent
    std::int64_t log2_size() const {
        return consistent ? static_cast<std::int64_t>(nullity()) * rhs_cols : -1;
    }
};

int gf2_rank(const BitMatrix& a);

// Solves A*X = B column-block-wise in one elimination pass.
// Throws std::invalid_argument if A.rows != B.rows.
SolveResult gf2_solve(const BitMatrix& a, const BitMatrix& b);

std::uint64_t default_enum_cap();  // honors XVCS_ENUM_CAP, default 2^20

// Visits every solution exactly once, ordered lexicographically by the
// basis-coefficient bit string (coefficient of basis vector b for column j at
// position b*m + j, position 0 most significant).
void for_each_solution(const SolveResult& r, std::uint64_t cap,
                       const std::function<void(const BitMatrix&)>& fn);

std::vector<BitMatrix> enumerate_solutions(const SolveResult& r,
                                           std::uint64_t cap = default_enum_cap());

// Uniform sample from the solution set; coefficients drawn per column
// independently. Deterministic for a fixed seed.
BitMatrix sample_solution(const SolveResult& r, std::uint64_t seed);

// A solution built from an external bit source (one call per coefficient),
// consumed column-major: for each column j, one bit per basis vector.
BitMatrix solution_from_bits(const SolveResult& r, const std::function<bool()>& next_bit);

// Incrementally maintained row echelon form of a system [A | B], used to
// answer consistency queries as extra rows are appended. Rows only ever
// accumulate, so a shared base system can be extended per query and rolled
// back without copying.
class EchelonSystem {
  public:
    EchelonSystem(int a_cols, int b_cols);

    int a_cols() const { return a_cols_; }
    int b_cols() const { return b_cols_; }
    int width() const { return a_cols_ + b_cols_; }

    // row is 1 x (a_cols + b_cols)
    void add_row(const BitMatrix& row);
    void add_row_ab(const BitMatrix& a_part, const BitMatrix& b_part);
    // a_bits: columns of the A-part to set; B-part zero
    void add_selector_row(const std::vector<int>& a_bits);
    bool consistent() const { return consistent_; }
    int rank() const { return static_cast<int>(pivots_.size()); }

    struct Mark {
        std::size_t row_count;
        bool consistent;
    };
    Mark mark() const { return {pivots_.size(), consistent_}; }
    void rollback(const Mark& m);

    // Reduces the full-width row (a_cols + b_cols bits, one word per 64) in
    // place against the echelon rows. Afterwards the A-part is zero iff the
    // original A-part lay in the row space; the B-part then holds the matching
    // combination of right-hand sides.
    void reduce_in_place(std::uint64_t* row) const;
    bool a_part_is_zero(const std::uint64_t* row) const;

    // Allocating convenience wrapper around reduce_in_place.
    bool combine(const BitMatrix& q, BitMatrix& b_combo) const;

  private:
    void insert_reduced(std::uint64_t* row);

    int a_cols_;
    int b_cols_;
    int wpr_;
    bool consistent_ = true;
    std::vector<std::uint64_t> rows_;  // echelon rows, flat, wpr_ words each
    std::vector<int> pivots_;          // pivot column (in A-part) per stored row
};

}  // namespace xvcs
