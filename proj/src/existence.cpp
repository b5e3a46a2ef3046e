#include "xvcs/existence.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "xvcs/gf2solve.hpp"

namespace xvcs {

namespace {

bool contains_qualified(const AccessStructure& s, const BitMatrix& indicator) {
    for (const Subset& q : s.minimal_qualified()) {
        bool inside = true;
        for (int p : q) {
            if (!indicator.get(0, p)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            return true;
        }
    }
    return false;
}

// lexicographic over the bit positions: position 0 compares first, 0 < 1
bool lex_less(std::uint64_t a, std::uint64_t b) {
    std::uint64_t diff = a ^ b;
    if (diff == 0) {
        return false;
    }
    return ((a >> std::countr_zero(diff)) & 1u) == 0;
}

// echelon basis over <= 64-bit row masks
struct MaskEchelon {
    std::vector<std::uint64_t> basis;  // each entry keeps its lowest set bit as pivot

    std::uint64_t reduce(std::uint64_t v) const {
        for (std::uint64_t b : basis) {
            std::uint64_t pivot = b & (~b + 1);
            if (v & pivot) {
                v ^= b;
            }
        }
        return v;
    }
    void insert(std::uint64_t v) {
        v = reduce(v);
        if (v != 0) {
            basis.push_back(v);
            // keep pivots in increasing order so reduce() terminates cleanly
            std::sort(basis.begin(), basis.end(), [](std::uint64_t a, std::uint64_t b) {
                return std::countr_zero(a) < std::countr_zero(b);
            });
        }
    }
    bool contains(std::uint64_t v) const { return reduce(v) == 0; }
    int rank() const { return static_cast<int>(basis.size()); }
};

struct CoverSearch {
    std::vector<std::uint64_t> supports;  // candidate columns; a column equals its support mask
    std::uint64_t universe = 0;
    std::size_t nodes = 0;
    std::size_t node_cap = 1u << 21;
    bool aborted = false;
    std::vector<int> best;

    bool dfs(std::uint64_t uncovered, std::vector<int>& chosen, std::size_t limit) {
        if (uncovered == 0) {
            best = chosen;
            return true;
        }
        if (chosen.size() >= limit) {
            return false;
        }
        if (++nodes > node_cap) {
            aborted = true;
            return false;
        }
        // branch on the lowest uncovered row to avoid permuted re-exploration
        std::uint64_t target = uncovered & (~uncovered + 1);
        for (std::size_t i = 0; i < supports.size(); ++i) {
            if (supports[i] & target) {
                chosen.push_back(static_cast<int>(i));
                if (dfs(uncovered & ~supports[i], chosen, limit)) {
                    return true;
                }
                chosen.pop_back();
                if (aborted) {
                    return false;
                }
            }
        }
        return false;
    }
};

}  // namespace

ExistenceVerdict exists_expansion_one(const AccessStructure& s) {
    QualifiedMatrix q = s.qualified_matrix();
    const int t = q.t();
    if (t > 20) {
        throw std::invalid_argument(
            "exists_expansion_one: refusing exhaustive subset enumeration beyond 20 rows");
    }
    ExistenceVerdict v;
    BitMatrix acc(1, q.n());
    std::uint32_t gray = 0;
    const std::uint32_t total = std::uint32_t(1) << t;
    for (std::uint32_t c = 1; c < total; ++c) {
        std::uint32_t next = c ^ (c >> 1);
        std::uint32_t flipped = gray ^ next;
        acc.row_xor_from(0, q.matrix, std::countr_zero(flipped));
        gray = next;
        if (std::popcount(gray) % 2 == 1 && !contains_qualified(s, acc)) {
            v.exists = false;
            std::vector<int> witness;
            for (int r = 0; r < t; ++r) {
                if (gray & (std::uint32_t(1) << r)) {
                    witness.push_back(r);
                }
            }
            v.witness_rows = std::move(witness);
            v.reason = "odd row subset stacks to the forbidden bitset " +
                       subset_string([&] {
                           Subset bits;
                           for (int p = 0; p < q.n(); ++p) {
                               if (acc.get(0, p)) {
                                   bits.push_back(p);
                               }
                           }
                           return bits;
                       }());
            return v;
        }
    }
    v.exists = true;
    v.minimal_m = 1;
    v.certificate = BitMatrix::ones(t, 1);
    v.reason = "every odd row stack covers a qualified set";
    return v;
}

// span over maximal forbidden F of { y : support(y^T * Gamma) inside F };
// these are exactly the functionals every admissible black target must
// annihilate
MaskEchelon forced_functionals(const QualifiedMatrix& q, const ForbiddenFamily& fam) {
    const int t = q.t();
    const int n = q.n();
    MaskEchelon l;
    for (const Subset& f : fam.maximal_forbidden()) {
        std::vector<int> outside;
        std::vector<bool> in_f(static_cast<std::size_t>(n), false);
        for (int p : f) {
            in_f[static_cast<std::size_t>(p)] = true;
        }
        for (int p = 0; p < n; ++p) {
            if (!in_f[static_cast<std::size_t>(p)]) {
                outside.push_back(p);
            }
        }
        // y with (y^T * Gamma) zero outside F  <=>  (Gamma_outside)^T y = 0
        BitMatrix gamma_out_t = q.matrix.select_cols(outside).transposed();
        SolveResult ker = gf2_solve(gamma_out_t, BitMatrix(gamma_out_t.rows(), 1));
        for (const BitMatrix& y : ker.nullspace) {
            std::uint64_t mask = 0;
            for (int r = 0; r < t; ++r) {
                if (y.get(r, 0)) {
                    mask |= std::uint64_t(1) << r;
                }
            }
            l.insert(mask);
        }
    }
    return l;
}

std::vector<BitMatrix> complement_basis(const MaskEchelon& l, int t) {
    BitMatrix l_mat(l.rank(), t);
    for (int r = 0; r < l.rank(); ++r) {
        for (int c = 0; c < t; ++c) {
            if (l.basis[static_cast<std::size_t>(r)] & (std::uint64_t(1) << c)) {
                l_mat.set(r, c, true);
            }
        }
    }
    return gf2_solve(l_mat, BitMatrix(l.rank(), 1)).nullspace;
}

ExistenceVerdict exists_sxvcs(const AccessStructure& s) {
    QualifiedMatrix q = s.qualified_matrix();
    const int t = q.t();
    if (t > 64) {
        throw std::invalid_argument("exists_sxvcs: qualified family larger than 64 rows");
    }
    MaskEchelon l = forced_functionals(q, forbidden_family(s));

    ExistenceVerdict v;
    for (int r = 0; r < t; ++r) {
        if (l.contains(std::uint64_t(1) << r)) {
            v.exists = false;
            v.forced_zero_row = r;
            v.reason = "target row " + std::to_string(r + 1) +
                       " (qualified set " + subset_string(q.row_sets[static_cast<std::size_t>(r)]) +
                       ") is forced to zero, contradicting contrast";
            return v;
        }
    }
    v.exists = true;

    // orthogonal complement: admissible certificate columns
    std::vector<BitMatrix> comp_basis = complement_basis(l, t);
    const int dim = static_cast<int>(comp_basis.size());

    auto mask_of = [&](const BitMatrix& col) {
        std::uint64_t mask = 0;
        for (int r = 0; r < t; ++r) {
            if (col.get(r, 0)) {
                mask |= std::uint64_t(1) << r;
            }
        }
        return mask;
    };

    // candidate columns: the whole complement when enumerable, else its basis
    std::vector<std::uint64_t> candidates;
    bool full_enumeration = dim <= 20;
    if (full_enumeration) {
        std::vector<std::uint64_t> base;
        for (const BitMatrix& b : comp_basis) {
            base.push_back(mask_of(b));
        }
        candidates.reserve((std::size_t(1) << dim) - 1);
        std::uint64_t cur = 0;
        std::uint64_t prev_gray = 0;
        for (std::uint64_t c = 1; c < (std::uint64_t(1) << dim); ++c) {
            std::uint64_t gray = c ^ (c >> 1);
            cur ^= base[static_cast<std::size_t>(std::countr_zero(prev_gray ^ gray))];
            prev_gray = gray;
            if (cur != 0) {
                candidates.push_back(cur);
            }
        }
    } else {
        for (const BitMatrix& b : comp_basis) {
            candidates.push_back(mask_of(b));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::sort(candidates.begin(), candidates.end(), lex_less);

    CoverSearch cover;
    cover.universe = t == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << t) - 1;
    if (candidates.size() <= 4096) {
        // drop support-dominated candidates (a dominating support always
        // substitutes in a minimal cover)
        for (std::uint64_t c : candidates) {
            bool dominated = false;
            for (std::uint64_t d : candidates) {
                if (c != d && (c & ~d) == 0) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) {
                cover.supports.push_back(c);
            }
        }
    } else {
        cover.supports = candidates;
    }

    // greedy upper bound: most new rows covered, ties by lexicographically
    // smallest column (candidates are already in that order)
    std::vector<int> greedy;
    std::uint64_t uncovered = cover.universe;
    while (uncovered != 0) {
        int best_i = -1;
        int best_gain = 0;
        for (std::size_t i = 0; i < cover.supports.size(); ++i) {
            int gain = std::popcount(cover.supports[i] & uncovered);
            if (gain > best_gain) {
                best_gain = gain;
                best_i = static_cast<int>(i);
            }
        }
        if (best_i < 0) {
            // cannot happen: no basis-vector zero column once every e_r is outside L
            throw std::logic_error("exists_sxvcs: complement does not cover all rows");
        }
        greedy.push_back(best_i);
        uncovered &= ~cover.supports[static_cast<std::size_t>(best_i)];
    }

    std::vector<int> chosen_cover = greedy;
    bool exact = full_enumeration;
    if (full_enumeration && greedy.size() > 1) {
        // iterative deepening below the greedy size
        for (std::size_t limit = 1; limit < greedy.size(); ++limit) {
            std::vector<int> chosen;
            cover.nodes = 0;
            if (cover.dfs(cover.universe, chosen, limit)) {
                chosen_cover = cover.best;
                break;
            }
            if (cover.aborted) {
                exact = false;
                break;
            }
        }
    }

    const int m = static_cast<int>(chosen_cover.size());
    BitMatrix cert(t, m);
    for (int j = 0; j < m; ++j) {
        std::uint64_t vec = cover.supports[static_cast<std::size_t>(chosen_cover[j])];
        for (int r = 0; r < t; ++r) {
            if (vec & (std::uint64_t(1) << r)) {
                cert.set(r, j, true);
            }
        }
    }
    v.minimal_m = m;
    v.minimal_m_is_exact = exact;
    v.certificate = std::move(cert);
    v.reason = full_enumeration ? "admissible cover found"
                                : "greedy cover over complement basis (upper bound)";
    return v;
}

std::vector<BitMatrix> admissible_black_columns(const AccessStructure& s) {
    QualifiedMatrix q = s.qualified_matrix();
    if (q.t() > 64) {
        throw std::invalid_argument("admissible_black_columns: qualified family larger than 64 rows");
    }
    return complement_basis(forced_functionals(q, forbidden_family(s)), q.t());
}

}  // namespace xvcs
