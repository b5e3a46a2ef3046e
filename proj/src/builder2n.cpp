#include "xvcs/builder2n.hpp"

namespace xvcs {

namespace {

bool power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

// grows the target by one row (or one column block when the count crosses a
// power of two); `b` has i-2 rows before the call and i-1 after
BitMatrix grow(const BitMatrix& b, int i, int& mcols) {
    if (power_of_two(i - 1)) {
        // append a ones column and a final row (0...0 1)
        BitMatrix wider(b.rows() + 1, mcols + 1);
        for (int r = 0; r < b.rows(); ++r) {
            for (int c = 0; c < mcols; ++c) {
                if (b.get(r, c)) {
                    wider.set(r, c, true);
                }
            }
            wider.set(r, mcols, true);
        }
        wider.set(b.rows(), mcols, true);
        ++mcols;
        return wider;
    }
    // mirror step: repeat row 2^mcols - i + 1 (1-based) of the current matrix
    int mirror = (1 << mcols) - i + 1;
    return BitMatrix::vstack(b, b.row(mirror - 1));
}

}  // namespace

BitMatrix optimal_2n_rhs(int n) {
    if (n < 2) {
        throw std::invalid_argument("optimal_2n_rhs: n must be at least 2");
    }
    BitMatrix b = BitMatrix::ones(1, 1);
    int mcols = 1;
    for (int i = 3; i <= n; ++i) {
        b = grow(b, i, mcols);
    }
    return b;
}

std::vector<BitMatrix> optimal_2n_rhs_prefixes(int n) {
    if (n < 2) {
        throw std::invalid_argument("optimal_2n_rhs_prefixes: n must be at least 2");
    }
    std::vector<BitMatrix> out;
    BitMatrix b = BitMatrix::ones(1, 1);
    int mcols = 1;
    out.push_back(b);
    for (int i = 3; i <= n; ++i) {
        b = grow(b, i, mcols);
        out.push_back(b);
    }
    return out;
}

QualifiedMatrix path_matrix(int n) {
    QualifiedMatrix q;
    q.matrix = BitMatrix(n - 1, n);
    for (int r = 0; r + 1 < n; ++r) {
        q.matrix.set(r, r, true);
        q.matrix.set(r, r + 1, true);
        q.row_sets.push_back({r, r + 1});
    }
    return q;
}

LinearScheme build_optimal_2n(int n) {
    if (n < 2) {
        throw std::invalid_argument("build_optimal_2n: n must be at least 2");
    }
    BitMatrix b1 = optimal_2n_rhs(n);
    std::vector<Subset> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.push_back({i, j});
        }
    }
    return make_scheme(path_matrix(n), {BitMatrix(n - 1, b1.cols())}, {std::move(b1)},
                       std::move(pairs));
}

}  // namespace xvcs
