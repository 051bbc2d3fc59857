#include "parityforge/bitmatrix.hpp"

#include <bit>
#include <stdexcept>

namespace pf {

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::mask_tail(std::size_t r) {
    if (n_cols_ % 64 == 0 || words_per_row_ == 0) return;
    word(r, words_per_row_ - 1) &= (1ull << (n_cols_ % 64)) - 1;
}

void BitMatrix::xor_row(std::size_t r, const BitMatrix& other, std::size_t s) {
    if (other.n_cols_ != n_cols_) throw std::invalid_argument("xor_row: width mismatch");
    uint64_t* dst = row_data(r);
    const uint64_t* src = other.row_data(s);
    for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] ^= src[w];
}

void BitMatrix::append_row(const BitMatrix& other, std::size_t s) {
    if (other.n_cols_ != n_cols_) throw std::invalid_argument("append_row: width mismatch");
    bits_.insert(bits_.end(), other.row_data(s), other.row_data(s) + words_per_row_);
    ++n_rows_;
}

void BitMatrix::append_zero_row() {
    bits_.insert(bits_.end(), words_per_row_, 0ull);
    ++n_rows_;
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
    std::size_t w = 0;
    const uint64_t* p = row_data(r);
    for (std::size_t i = 0; i < words_per_row_; ++i) w += std::popcount(p[i]);
    return w;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    const uint64_t* p = row_data(r);
    for (std::size_t i = 0; i < words_per_row_; ++i)
        if (p[i]) return false;
    return true;
}

bool BitMatrix::dot_rows(std::size_t r, const BitMatrix& other, std::size_t s) const {
    if (other.n_cols_ != n_cols_) throw std::invalid_argument("dot_rows: width mismatch");
    uint64_t acc = 0;
    const uint64_t* a = row_data(r);
    const uint64_t* b = other.row_data(s);
    for (std::size_t i = 0; i < words_per_row_; ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(n_cols_, n_rows_);
    for (std::size_t r = 0; r < n_rows_; ++r)
        for (std::size_t c : row_support(r)) t.set(c, r, true);
    return t;
}

BitMatrix BitMatrix::multiplied(const BitMatrix& rhs) const {
    if (n_cols_ != rhs.n_rows_) throw std::invalid_argument("multiplied: shape mismatch");
    BitMatrix out(n_rows_, rhs.n_cols_);
    for (std::size_t r = 0; r < n_rows_; ++r)
        for (std::size_t c : row_support(r)) out.xor_row(r, rhs, c);
    return out;
}

std::vector<std::size_t> BitMatrix::row_support(std::size_t r) const {
    std::vector<std::size_t> out;
    const uint64_t* p = row_data(r);
    for (std::size_t w = 0; w < words_per_row_; ++w) {
        uint64_t x = p[w];
        while (x) {
            out.push_back(w * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return out;
}

std::string BitMatrix::row_string(std::size_t r) const {
    std::string s(n_cols_, '0');
    for (std::size_t c : row_support(r)) s[c] = '1';
    return s;
}

namespace {

// Forward elimination; returns rank and (optionally) pivot columns.
std::size_t eliminate(BitMatrix& m, std::vector<std::size_t>* pivots) {
    std::size_t rank = 0;
    const std::size_t rows = m.n_rows(), cols = m.n_cols();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (m.get(r, c)) { pivot = r; break; }
        }
        if (pivot == rows) continue;
        if (pivot != rank) {
            // swap rows via word pointers
            uint64_t* a = m.row_data(pivot);
            uint64_t* b = m.row_data(rank);
            for (std::size_t w = 0; w < m.words_per_row(); ++w) std::swap(a[w], b[w]);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != rank && m.get(r, c)) m.xor_row(r, rank);
        }
        if (pivots) pivots->push_back(c);
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t gf2_rank(const BitMatrix& m) {
    BitMatrix work = m;
    return eliminate(work, nullptr);
}

BitMatrix gf2_kernel(const BitMatrix& m) {
    BitMatrix work = m;
    std::vector<std::size_t> pivots;
    const std::size_t rank = eliminate(work, &pivots);
    const std::size_t n = m.n_cols();

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    BitMatrix kernel(n - rank, n);
    std::size_t k = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        // free column c: x_c = 1, pivot variables read off the reduced rows
        kernel.set(k, c, true);
        for (std::size_t r = 0; r < rank; ++r)
            if (work.get(r, c)) kernel.set(k, pivots[r], true);
        ++k;
    }
    return kernel;
}

bool gf2_solve_row(const BitMatrix& m, const BitMatrix& target, std::size_t target_row,
                   std::vector<uint8_t>& x) {
    // Solve x * m = t by eliminating [m | I] and reducing t.
    const std::size_t rows = m.n_rows(), cols = m.n_cols();
    if (target.n_cols() != cols) throw std::invalid_argument("gf2_solve_row: width mismatch");

    BitMatrix work(rows, cols + rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c : m.row_support(r)) work.set(r, c, true);
        work.set(r, cols + r, true);
    }
    BitMatrix t(1, cols + rows);
    for (std::size_t c : target.row_support(target_row)) t.set(0, c, true);

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (work.get(r, c)) { pivot = r; break; }
        if (pivot == rows) continue;
        if (pivot != rank) {
            uint64_t* a = work.row_data(pivot);
            uint64_t* b = work.row_data(rank);
            for (std::size_t w = 0; w < work.words_per_row(); ++w) std::swap(a[w], b[w]);
        }
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && work.get(r, c)) work.xor_row(r, rank);
        if (t.get(0, c)) t.xor_row(0, work, rank);
        ++rank;
    }
    for (std::size_t c = 0; c < cols; ++c)
        if (t.get(0, c)) return false;  // inconsistent

    x.assign(rows, 0);
    for (std::size_t r = 0; r < rows; ++r)
        if (t.get(0, cols + r)) x[r] = 1;
    return true;
}

}  // namespace pf
