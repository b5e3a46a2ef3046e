#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xvcs {

// Dense boolean matrix over GF(2). Rows are bit-packed into 64-bit words,
// least significant bit first; padding bits past `cols` are kept zero so that
// whole-word comparisons and popcounts are valid on the significant region.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    static BitMatrix zero(int rows, int cols) { return BitMatrix(rows, cols); }
    static BitMatrix ones(int rows, int cols);
    static BitMatrix identity(int n);
    // Rows given as strings of '0'/'1', leftmost character = column 0.
    static BitMatrix from_rows(const std::vector<std::string>& rows);
    static BitMatrix from_rows(std::initializer_list<std::string> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int words_per_row() const { return wpr_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    bool get(int r, int c) const {
        return (w_[static_cast<std::size_t>(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(int r, int c, bool v) {
        std::uint64_t& word = w_[static_cast<std::size_t>(r) * wpr_ + (c >> 6)];
        std::uint64_t mask = std::uint64_t(1) << (c & 63);
        if (v) {
            word |= mask;
        } else {
            word &= ~mask;
        }
    }

    std::span<std::uint64_t> row_words(int r) {
        return {w_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
    }
    std::span<const std::uint64_t> row_words(int r) const {
        return {w_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
    }

    void row_xor(int dst, int src);                                  // row dst ^= row src
    void row_xor_from(int dst, const BitMatrix& other, int src);     // row dst ^= other row src
    void swap_rows(int a, int b);
    int row_weight(int r) const;
    bool row_is_zero(int r) const;
    int row_first_set(int r) const;  // column of first set bit, -1 if zero row

    BitMatrix row(int r) const;  // 1 x cols copy
    BitMatrix col(int c) const;  // rows x 1 copy
    void set_row(int r, const BitMatrix& one_row);

    BitMatrix transposed() const;
    BitMatrix select_rows(const std::vector<int>& idx) const;
    BitMatrix select_cols(const std::vector<int>& idx) const;
    BitMatrix xor_all_rows() const;  // 1 x cols

    static BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
    static BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

    bool is_zero() const;
    std::string row_string(int r) const;  // "0110", column 0 leftmost
    std::string flat_string() const;      // all rows concatenated, row-major
    std::string pretty() const;           // multi-line, for diagnostics

    BitMatrix& operator^=(const BitMatrix& o);
    friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);  // GF(2) product

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;
    // Total order: dimensions, then bit-lexicographic row-major with
    // position 0 most significant. Used for canonical choices and multisets.
    friend std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b);

  private:
    int rows_ = 0;
    int cols_ = 0;
    int wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace xvcs
