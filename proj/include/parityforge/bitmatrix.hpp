#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace pf {

// Dense GF(2) matrix with rows packed into 64-bit words.
// Row-major, word-parallel elimination.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t n_rows, std::size_t n_cols)
        : n_rows_(n_rows), n_cols_(n_cols),
          words_per_row_((n_cols + 63) / 64),
          bits_(n_rows * words_per_row_, 0) {}

    static BitMatrix identity(std::size_t n);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (word(r, c / 64) >> (c % 64)) & 1ull;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t& w = word(r, c / 64);
        if (v) w |= 1ull << (c % 64);
        else   w &= ~(1ull << (c % 64));
    }

    // row r ^= row s (also accepts rows from another matrix of equal width)
    void xor_row(std::size_t r, const BitMatrix& other, std::size_t s);
    void xor_row(std::size_t r, std::size_t s) { xor_row(r, *this, s); }

    void append_row(const BitMatrix& other, std::size_t s);
    void append_zero_row();

    std::size_t row_weight(std::size_t r) const;
    bool row_is_zero(std::size_t r) const;

    // parity of <row r, other row s>
    bool dot_rows(std::size_t r, const BitMatrix& other, std::size_t s) const;

    bool operator==(const BitMatrix& o) const {
        return n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ && bits_ == o.bits_;
    }

    BitMatrix transposed() const;
    BitMatrix multiplied(const BitMatrix& rhs) const;  // (*this) * rhs over GF(2)

    std::vector<std::size_t> row_support(std::size_t r) const;
    std::string row_string(std::size_t r) const;

    const uint64_t* row_data(std::size_t r) const { return bits_.data() + r * words_per_row_; }
    uint64_t* row_data(std::size_t r) { return bits_.data() + r * words_per_row_; }
    std::size_t words_per_row() const { return words_per_row_; }

  private:
    uint64_t& word(std::size_t r, std::size_t w) { return bits_[r * words_per_row_ + w]; }
    const uint64_t& word(std::size_t r, std::size_t w) const { return bits_[r * words_per_row_ + w]; }
    void mask_tail(std::size_t r);

    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<uint64_t> bits_;
};

// Row rank over GF(2) via word-parallel elimination. Input is copied.
std::size_t gf2_rank(const BitMatrix& m);

// Basis of the right null space, one basis vector per row.
// Always returns n_cols - rank rows (identity basis for an empty matrix).
BitMatrix gf2_kernel(const BitMatrix& m);

// Solve x * m = target for a row vector x (target given as a row of a
// 1 x n_cols matrix). Returns true and fills x on success.
bool gf2_solve_row(const BitMatrix& m, const BitMatrix& target, std::size_t target_row,
                   std::vector<uint8_t>& x);

}  // namespace pf
