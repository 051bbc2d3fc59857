#pragma once

#include <optional>

#include "parityforge/bitmatrix.hpp"
#include "parityforge/errors.hpp"

namespace pf {

struct CodeParams {
    std::size_t n = 0;  // block length
    std::size_t k = 0;  // dimension
    std::optional<std::size_t> d;    // distance (classical)
    std::optional<std::size_t> d_x;  // CSS pair
    std::optional<std::size_t> d_z;
};

// CSS code given by its Z and X check matrices plus logical representatives.
// Logical rows are paired: logical_x row i anticommutes with logical_z row i
// and commutes with all other logical rows and checks.
struct CssCode {
    BitMatrix z_checks;
    BitMatrix x_checks;
    BitMatrix logical_x;
    BitMatrix logical_z;
    CodeParams params;
};

// Generator matrix of the classical Reed-Muller code RM(r, m).
// Columns are the 2^m binary inputs in lexicographic order (column j reads
// x_0 x_1 ... x_{m-1} off the bits of j, most significant first). Rows are
// monomial evaluations ordered by degree, then lexicographically within a
// degree. Full row rank sum_{i<=r} C(m, i).
BitMatrix rm_generator(unsigned r, unsigned m);

// Number of rows of rm_generator(r, m).
std::size_t rm_dimension(unsigned r, unsigned m);

// True iff RM(r, m) and RM(m-r-1, m) are dual: zero GF(2) product and
// dimensions summing to 2^m. Requires 0 <= r <= m-1.
bool check_duality(unsigned r, unsigned m);

// Shortened quantum Reed-Muller code on 2^m - 1 qubits: puncture the
// coordinate of the all-zero input and drop the constant-monomial X row.
// X checks are the m degree-1 rows (weight 2^{m-1} each); Z checks are the
// degree 1..m-2 monomial rows, 2^m - m - 2 of them. Logical Z has a
// weight-3 representative, logical X weight 2^{m-1} - 1.
CssCode shortened_qrm(unsigned m);

}  // namespace pf
