#include "xvcs/bitmatrix.hpp"

#include <algorithm>

namespace xvcs {

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) {
        throw std::invalid_argument("BitMatrix: negative dimension");
    }
    wpr_ = (cols + 63) / 64;
    w_.assign(static_cast<std::size_t>(rows_) * wpr_, 0);
}

BitMatrix BitMatrix::ones(int rows, int cols) {
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m.set(r, c, true);
        }
    }
    return m;
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    BitMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) {
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        }
        for (int j = 0; j < c; ++j) {
            char ch = rows[i][j];
            if (ch != '0' && ch != '1') {
                throw std::invalid_argument("BitMatrix::from_rows: invalid character");
            }
            m.set(i, j, ch == '1');
        }
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string> rows) {
    return from_rows(std::vector<std::string>(rows));
}

void BitMatrix::row_xor(int dst, int src) {
    std::uint64_t* d = w_.data() + static_cast<std::size_t>(dst) * wpr_;
    const std::uint64_t* s = w_.data() + static_cast<std::size_t>(src) * wpr_;
    for (int i = 0; i < wpr_; ++i) {
        d[i] ^= s[i];
    }
}

void BitMatrix::row_xor_from(int dst, const BitMatrix& other, int src) {
    if (other.cols_ != cols_) {
        throw std::invalid_argument("row_xor_from: column mismatch");
    }
    std::uint64_t* d = w_.data() + static_cast<std::size_t>(dst) * wpr_;
    const std::uint64_t* s = other.w_.data() + static_cast<std::size_t>(src) * other.wpr_;
    for (int i = 0; i < wpr_; ++i) {
        d[i] ^= s[i];
    }
}

void BitMatrix::swap_rows(int a, int b) {
    if (a == b) {
        return;
    }
    std::uint64_t* pa = w_.data() + static_cast<std::size_t>(a) * wpr_;
    std::uint64_t* pb = w_.data() + static_cast<std::size_t>(b) * wpr_;
    for (int i = 0; i < wpr_; ++i) {
        std::swap(pa[i], pb[i]);
    }
}

int BitMatrix::row_weight(int r) const {
    const std::uint64_t* p = w_.data() + static_cast<std::size_t>(r) * wpr_;
    int w = 0;
    for (int i = 0; i < wpr_; ++i) {
        w += std::popcount(p[i]);
    }
    return w;
}

bool BitMatrix::row_is_zero(int r) const {
    const std::uint64_t* p = w_.data() + static_cast<std::size_t>(r) * wpr_;
    for (int i = 0; i < wpr_; ++i) {
        if (p[i] != 0) {
            return false;
        }
    }
    return true;
}

int BitMatrix::row_first_set(int r) const {
    const std::uint64_t* p = w_.data() + static_cast<std::size_t>(r) * wpr_;
    for (int i = 0; i < wpr_; ++i) {
        if (p[i] != 0) {
            return i * 64 + std::countr_zero(p[i]);
        }
    }
    return -1;
}

BitMatrix BitMatrix::row(int r) const {
    BitMatrix m(1, cols_);
    std::copy_n(w_.data() + static_cast<std::size_t>(r) * wpr_, wpr_, m.w_.data());
    return m;
}

BitMatrix BitMatrix::col(int c) const {
    BitMatrix m(rows_, 1);
    for (int r = 0; r < rows_; ++r) {
        m.set(r, 0, get(r, c));
    }
    return m;
}

void BitMatrix::set_row(int r, const BitMatrix& one_row) {
    if (one_row.rows_ != 1 || one_row.cols_ != cols_) {
        throw std::invalid_argument("set_row: shape mismatch");
    }
    std::copy_n(one_row.w_.data(), wpr_, w_.data() + static_cast<std::size_t>(r) * wpr_);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (get(r, c)) {
                m.set(c, r, true);
            }
        }
    }
    return m;
}

BitMatrix BitMatrix::select_rows(const std::vector<int>& idx) const {
    BitMatrix m(static_cast<int>(idx.size()), cols_);
    for (int i = 0; i < static_cast<int>(idx.size()); ++i) {
        std::copy_n(w_.data() + static_cast<std::size_t>(idx[i]) * wpr_, wpr_,
                    m.w_.data() + static_cast<std::size_t>(i) * wpr_);
    }
    return m;
}

BitMatrix BitMatrix::select_cols(const std::vector<int>& idx) const {
    BitMatrix m(rows_, static_cast<int>(idx.size()));
    for (int r = 0; r < rows_; ++r) {
        for (int j = 0; j < static_cast<int>(idx.size()); ++j) {
            if (get(r, idx[j])) {
                m.set(r, j, true);
            }
        }
    }
    return m;
}

BitMatrix BitMatrix::xor_all_rows() const {
    BitMatrix m(1, cols_);
    for (int r = 0; r < rows_; ++r) {
        m.row_xor_from(0, *this, r);
    }
    return m;
}

BitMatrix BitMatrix::hstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows_ != b.rows_) {
        throw std::invalid_argument("hstack: row mismatch");
    }
    BitMatrix m(a.rows_, a.cols_ + b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        for (int c = 0; c < a.cols_; ++c) {
            if (a.get(r, c)) {
                m.set(r, c, true);
            }
        }
        for (int c = 0; c < b.cols_; ++c) {
            if (b.get(r, c)) {
                m.set(r, a.cols_ + c, true);
            }
        }
    }
    return m;
}

BitMatrix BitMatrix::vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.cols_) {
        throw std::invalid_argument("vstack: column mismatch");
    }
    BitMatrix m(a.rows_ + b.rows_, a.cols_);
    std::copy(a.w_.begin(), a.w_.end(), m.w_.begin());
    std::copy(b.w_.begin(), b.w_.end(), m.w_.begin() + a.w_.size());
    return m;
}

bool BitMatrix::is_zero() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

std::string BitMatrix::row_string(int r) const {
    std::string s(static_cast<std::size_t>(cols_), '0');
    for (int c = 0; c < cols_; ++c) {
        if (get(r, c)) {
            s[c] = '1';
        }
    }
    return s;
}

std::string BitMatrix::flat_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (int r = 0; r < rows_; ++r) {
        s += row_string(r);
    }
    return s;
}

std::string BitMatrix::pretty() const {
    std::string s;
    for (int r = 0; r < rows_; ++r) {
        s += row_string(r);
        if (r + 1 < rows_) {
            s += '\n';
        }
    }
    return s;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) {
        throw std::invalid_argument("operator^: shape mismatch");
    }
    for (std::size_t i = 0; i < w_.size(); ++i) {
        w_[i] ^= o.w_[i];
    }
    return *this;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("operator*: inner dimension mismatch");
    }
    BitMatrix m(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        const std::uint64_t* arow = a.w_.data() + static_cast<std::size_t>(r) * a.wpr_;
        std::uint64_t* mrow = m.w_.data() + static_cast<std::size_t>(r) * m.wpr_;
        for (int wi = 0; wi < a.wpr_; ++wi) {
            std::uint64_t word = arow[wi];
            while (word != 0) {
                int k = wi * 64 + std::countr_zero(word);
                word &= word - 1;
                const std::uint64_t* brow = b.w_.data() + static_cast<std::size_t>(k) * b.wpr_;
                for (int i = 0; i < m.wpr_; ++i) {
                    mrow[i] ^= brow[i];
                }
            }
        }
    }
    return m;
}

std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) {
        return c;
    }
    if (auto c = a.cols_ <=> b.cols_; c != 0) {
        return c;
    }
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        std::uint64_t diff = a.w_[i] ^ b.w_[i];
        if (diff != 0) {
            int bit = std::countr_zero(diff);
            // position with the lower index decides; a 0 bit sorts first
            return ((a.w_[i] >> bit) & 1u) ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
        }
    }
    return std::strong_ordering::equal;
}

}  // namespace xvcs
