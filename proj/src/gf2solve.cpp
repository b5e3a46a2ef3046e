#include "xvcs/gf2solve.hpp"

#include <cstdlib>
#include <random>

namespace xvcs {

namespace {

struct Rref {
    BitMatrix m;               // reduced [A | B]
    std::vector<int> pivots;   // pivot column per pivot row, within A
    int a_cols;
};

// Gauss-Jordan on [A | B], pivoting within the first a_cols columns only.
Rref reduce(BitMatrix m, int a_cols) {
    Rref out{std::move(m), {}, a_cols};
    int pr = 0;
    for (int c = 0; c < a_cols && pr < out.m.rows(); ++c) {
        int pivot = -1;
        for (int r = pr; r < out.m.rows(); ++r) {
            if (out.m.get(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        out.m.swap_rows(pr, pivot);
        for (int r = 0; r < out.m.rows(); ++r) {
            if (r != pr && out.m.get(r, c)) {
                out.m.row_xor(r, pr);
            }
        }
        out.pivots.push_back(c);
        ++pr;
    }
    return out;
}

}  // namespace

int gf2_rank(const BitMatrix& a) {
    return static_cast<int>(reduce(a, a.cols()).pivots.size());
}

SolveResult gf2_solve(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("gf2_solve: A and B row counts differ");
    }
    const int n = a.cols();
    const int m = b.cols();
    Rref rr = reduce(BitMatrix::hstack(a, b), n);

    SolveResult res;
    res.var_count = n;
    res.rhs_cols = m;
    res.rank = static_cast<int>(rr.pivots.size());

    res.consistent = true;
    for (int r = res.rank; r < rr.m.rows(); ++r) {
        if (!rr.m.row_is_zero(r)) {
            res.consistent = false;
            break;
        }
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : rr.pivots) {
        is_pivot[static_cast<std::size_t>(c)] = true;
    }
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) {
            continue;
        }
        BitMatrix v(n, 1);
        v.set(f, 0, true);
        for (int r = 0; r < res.rank; ++r) {
            if (rr.m.get(r, f)) {
                v.set(rr.pivots[static_cast<std::size_t>(r)], 0, true);
            }
        }
        res.nullspace.push_back(std::move(v));
    }

    if (res.consistent) {
        res.particular = BitMatrix(n, m);
        for (int r = 0; r < res.rank; ++r) {
            int pc = rr.pivots[static_cast<std::size_t>(r)];
            for (int j = 0; j < m; ++j) {
                if (rr.m.get(r, n + j)) {
                    res.particular.set(pc, j, true);
                }
            }
        }
    }
    return res;
}

std::uint64_t default_enum_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("XVCS_ENUM_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) {
                return static_cast<std::uint64_t>(v);
            }
        }
        return std::uint64_t(1) << 20;
    }();
    return cap;
}

void for_each_solution(const SolveResult& r, std::uint64_t cap,
                       const std::function<void(const BitMatrix&)>& fn) {
    if (!r.consistent) {
        throw std::invalid_argument("for_each_solution: system is inconsistent");
    }
    const int dim = r.nullity();
    const int m = r.rhs_cols;
    const std::int64_t bits = static_cast<std::int64_t>(dim) * m;
    if (bits >= 63 || (std::uint64_t(1) << bits) > cap) {
        throw EnumerationCapExceeded("solution set too large to enumerate (2^" +
                                     std::to_string(bits) + " > cap " + std::to_string(cap) + ")");
    }
    const std::uint64_t total = std::uint64_t(1) << bits;
    for (std::uint64_t counter = 0; counter < total; ++counter) {
        BitMatrix x = r.particular;
        // coefficient position p = b*m + j; position 0 is the most
        // significant bit of the counter
        for (int b = 0; b < dim; ++b) {
            for (int j = 0; j < m; ++j) {
                std::int64_t p = static_cast<std::int64_t>(b) * m + j;
                if ((counter >> (bits - 1 - p)) & 1u) {
                    const BitMatrix& v = r.nullspace[static_cast<std::size_t>(b)];
                    for (int row = 0; row < r.var_count; ++row) {
                        if (v.get(row, 0)) {
                            x.set(row, j, !x.get(row, j));
                        }
                    }
                }
            }
        }
        fn(x);
    }
}

std::vector<BitMatrix> enumerate_solutions(const SolveResult& r, std::uint64_t cap) {
    std::vector<BitMatrix> out;
    for_each_solution(r, cap, [&](const BitMatrix& x) { out.push_back(x); });
    return out;
}

BitMatrix solution_from_bits(const SolveResult& r, const std::function<bool()>& next_bit) {
    if (!r.consistent) {
        throw std::invalid_argument("solution_from_bits: system is inconsistent");
    }
    BitMatrix x = r.particular;
    for (int j = 0; j < r.rhs_cols; ++j) {
        for (const BitMatrix& v : r.nullspace) {
            if (next_bit()) {
                for (int row = 0; row < r.var_count; ++row) {
                    if (v.get(row, 0)) {
                        x.set(row, j, !x.get(row, j));
                    }
                }
            }
        }
    }
    return x;
}

BitMatrix sample_solution(const SolveResult& r, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uint64_t pool = 0;
    int pool_bits = 0;
    auto next_bit = [&]() -> bool {
        if (pool_bits == 0) {
            pool = eng();
            pool_bits = 64;
        }
        bool b = pool & 1u;
        pool >>= 1;
        --pool_bits;
        return b;
    };
    return solution_from_bits(r, next_bit);
}

EchelonSystem::EchelonSystem(int a_cols, int b_cols)
    : a_cols_(a_cols), b_cols_(b_cols), wpr_((a_cols + b_cols + 63) / 64) {}

void EchelonSystem::insert_reduced(std::uint64_t* row) {
    int first = -1;
    for (int i = 0; i < wpr_; ++i) {
        if (row[i] != 0) {
            first = i * 64 + std::countr_zero(row[i]);
            break;
        }
    }
    if (first < 0) {
        return;  // dependent, no new information
    }
    if (first >= a_cols_) {
        consistent_ = false;  // zero A-part with nonzero B-part
        return;
    }
    rows_.insert(rows_.end(), row, row + wpr_);
    pivots_.push_back(first);
}

void EchelonSystem::reduce_in_place(std::uint64_t* row) const {
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        int p = pivots_[i];
        if ((row[p >> 6] >> (p & 63)) & 1u) {
            const std::uint64_t* er = rows_.data() + i * wpr_;
            for (int w = 0; w < wpr_; ++w) {
                row[w] ^= er[w];
            }
        }
    }
}

bool EchelonSystem::a_part_is_zero(const std::uint64_t* row) const {
    int full = a_cols_ / 64;
    for (int i = 0; i < full; ++i) {
        if (row[i] != 0) {
            return false;
        }
    }
    if (a_cols_ % 64) {
        std::uint64_t mask = (std::uint64_t(1) << (a_cols_ % 64)) - 1;
        if (row[full] & mask) {
            return false;
        }
    }
    return true;
}

void EchelonSystem::add_row(const BitMatrix& row) {
    if (row.rows() != 1 || row.cols() != width()) {
        throw std::invalid_argument("EchelonSystem::add_row: shape mismatch");
    }
    std::vector<std::uint64_t> buf(row.row_words(0).begin(), row.row_words(0).end());
    reduce_in_place(buf.data());
    insert_reduced(buf.data());
}

void EchelonSystem::add_row_ab(const BitMatrix& a_part, const BitMatrix& b_part) {
    add_row(BitMatrix::hstack(a_part, b_part));
}

void EchelonSystem::add_selector_row(const std::vector<int>& a_bits) {
    std::vector<std::uint64_t> buf(static_cast<std::size_t>(wpr_), 0);
    for (int c : a_bits) {
        buf[static_cast<std::size_t>(c >> 6)] ^= std::uint64_t(1) << (c & 63);
    }
    reduce_in_place(buf.data());
    insert_reduced(buf.data());
}

void EchelonSystem::rollback(const Mark& m) {
    pivots_.resize(m.row_count);
    rows_.resize(m.row_count * static_cast<std::size_t>(wpr_));
    consistent_ = m.consistent;
}

bool EchelonSystem::combine(const BitMatrix& q, BitMatrix& b_combo) const {
    if (q.rows() != 1 || q.cols() != a_cols_) {
        throw std::invalid_argument("EchelonSystem::combine: shape mismatch");
    }
    std::vector<std::uint64_t> buf(static_cast<std::size_t>(wpr_), 0);
    for (int c = 0; c < a_cols_; ++c) {
        if (q.get(0, c)) {
            buf[static_cast<std::size_t>(c >> 6)] |= std::uint64_t(1) << (c & 63);
        }
    }
    reduce_in_place(buf.data());
    if (!a_part_is_zero(buf.data())) {
        return false;
    }
    b_combo = BitMatrix(1, b_cols_);
    for (int j = 0; j < b_cols_; ++j) {
        int c = a_cols_ + j;
        if ((buf[static_cast<std::size_t>(c >> 6)] >> (c & 63)) & 1u) {
            b_combo.set(0, j, true);
        }
    }
    return true;
}

}  // namespace xvcs
