#include "parityforge/codes.hpp"

#include <algorithm>

namespace pf {

namespace {

// Monomials of degree <= r over variables {0..m-1}, ordered by degree and
// lexicographically within a degree. Each monomial is returned as the
// column-bit mask of its variables (variable v occupies bit m-1-v, matching
// the lexicographic column encoding).
std::vector<uint64_t> monomial_masks(unsigned r, unsigned m) {
    std::vector<uint64_t> masks;
    masks.push_back(0);  // constant
    std::vector<unsigned> idx;
    for (unsigned deg = 1; deg <= r; ++deg) {
        idx.assign(deg, 0);
        for (unsigned i = 0; i < deg; ++i) idx[i] = i;
        while (true) {
            uint64_t mask = 0;
            for (unsigned v : idx) mask |= 1ull << (m - 1 - v);
            masks.push_back(mask);
            // next combination in lex order
            int i = static_cast<int>(deg) - 1;
            while (i >= 0 && idx[i] == m - deg + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (unsigned j = i + 1; j < deg; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return masks;
}

}  // namespace

std::size_t rm_dimension(unsigned r, unsigned m) {
    std::size_t dim = 0, binom = 1;
    for (unsigned i = 0; i <= r; ++i) {
        if (i > 0) binom = binom * (m - i + 1) / i;
        dim += binom;
    }
    return dim;
}

BitMatrix rm_generator(unsigned r, unsigned m) {
    if (m == 0 || r > m) throw InvalidParameter("rm_generator: need m >= 1 and r <= m");
    const std::size_t n = 1ull << m;
    const auto masks = monomial_masks(r, m);
    BitMatrix g(masks.size(), n);
    for (std::size_t row = 0; row < masks.size(); ++row) {
        const uint64_t mask = masks[row];
        for (std::size_t j = 0; j < n; ++j)
            if ((j & mask) == mask) g.set(row, j, true);
    }
    return g;
}

bool check_duality(unsigned r, unsigned m) {
    if (m == 0 || r + 1 > m) throw InvalidParameter("check_duality: need 0 <= r <= m-1");
    const BitMatrix a = rm_generator(r, m);
    const BitMatrix b = rm_generator(m - r - 1, m);
    for (std::size_t i = 0; i < a.n_rows(); ++i)
        for (std::size_t j = 0; j < b.n_rows(); ++j)
            if (a.dot_rows(i, b, j)) return false;
    return a.n_rows() + b.n_rows() == (1ull << m);
}

CssCode shortened_qrm(unsigned m) {
    if (m < 3) throw InvalidParameter("shortened_qrm: need m >= 3");
    const std::size_t n = (1ull << m) - 1;  // column j <-> input point j+1

    CssCode code;
    // X checks: the m linear monomials, evaluated on nonzero points.
    code.x_checks = BitMatrix(m, n);
    for (unsigned v = 0; v < m; ++v) {
        const uint64_t mask = 1ull << (m - 1 - v);
        for (std::size_t j = 0; j < n; ++j)
            if ((j + 1) & mask) code.x_checks.set(v, j, true);
    }

    // Z checks: monomials of degree 1..m-2 on nonzero points.
    {
        const auto masks = monomial_masks(m - 2, m);
        std::vector<uint64_t> nonconst(masks.begin() + 1, masks.end());
        code.z_checks = BitMatrix(nonconst.size(), n);
        for (std::size_t row = 0; row < nonconst.size(); ++row) {
            const uint64_t mask = nonconst[row];
            for (std::size_t j = 0; j < n; ++j)
                if (((j + 1) & mask) == mask) code.z_checks.set(row, j, true);
        }
    }

    // Logical Z: the three points {e0, e1, e0^e1}; minimum weight since all
    // Z-type logicals have odd weight >= 3.
    code.logical_z = BitMatrix(1, n);
    const uint64_t e0 = 1ull << (m - 1), e1 = 1ull << (m - 2);
    code.logical_z.set(0, e0 - 1, true);
    code.logical_z.set(0, e1 - 1, true);
    code.logical_z.set(0, (e0 ^ e1) - 1, true);

    // Logical X: nonzero points on the x_0 = 0 hyperplane, weight 2^{m-1}-1.
    code.logical_x = BitMatrix(1, n);
    for (std::size_t j = 0; j < n; ++j)
        if (((j + 1) & e0) == 0) code.logical_x.set(0, j, true);

    code.params.n = n;
    code.params.k = 1;
    code.params.d_z = 3;
    if (m <= 14) {
        // Enumerate the logical-X coset over the 2^m span elements of the
        // X checks and take the minimum weight.
        std::size_t best = n + 1;
        BitMatrix acc(1, n);
        for (std::size_t s = 0; s < (1ull << m); ++s) {
            for (std::size_t w = 0; w < acc.words_per_row(); ++w) acc.row_data(0)[w] = 0;
            acc.xor_row(0, code.logical_x, 0);
            for (unsigned v = 0; v < m; ++v)
                if ((s >> v) & 1) acc.xor_row(0, code.x_checks, v);
            best = std::min(best, acc.row_weight(0));
        }
        code.params.d_x = best;
    } else {
        code.params.d_x = (1ull << (m - 1)) - 1;
    }
    return code;
}

}  // namespace pf
