#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parityforge/bitmatrix.hpp"
#include "parityforge/rng.hpp"

using pf::BitMatrix;

TEST_CASE("rank of identity and duplicated rows") {
    CHECK(pf::gf2_rank(BitMatrix::identity(4)) == 4);

    BitMatrix two(2, 6);
    for (std::size_t c : {0u, 2u, 5u}) {
        two.set(0, c, true);
        two.set(1, c, true);
    }
    CHECK(pf::gf2_rank(two) == 1);
}

TEST_CASE("kernel dimensions and membership") {
    BitMatrix ones(1, 4);
    for (std::size_t c = 0; c < 4; ++c) ones.set(0, c, true);
    const BitMatrix k = pf::gf2_kernel(ones);
    CHECK(k.n_rows() == 3);
    for (std::size_t r = 0; r < k.n_rows(); ++r) CHECK_FALSE(ones.dot_rows(0, k, r));

    // empty matrix: kernel is the identity basis
    const BitMatrix empty(0, 3);
    const BitMatrix ek = pf::gf2_kernel(empty);
    CHECK(ek.n_rows() == 3);
    CHECK(ek == BitMatrix::identity(3));
}

TEST_CASE("kernel vectors annihilate random matrices") {
    pf::CounterRng rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 3 + rng.next_below(8);
        const std::size_t cols = 4 + rng.next_below(90);
        BitMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng.next_double() < 0.35) m.set(r, c, true);
        const BitMatrix k = pf::gf2_kernel(m);
        CHECK(k.n_rows() == cols - pf::gf2_rank(m));
        for (std::size_t kr = 0; kr < k.n_rows(); ++kr)
            for (std::size_t r = 0; r < rows; ++r) CHECK_FALSE(m.dot_rows(r, k, kr));
    }
}

TEST_CASE("solve row combinations") {
    pf::CounterRng rng(999);
    BitMatrix m(5, 12);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 12; ++c)
            if (rng.next_double() < 0.4) m.set(r, c, true);

    BitMatrix target(1, 12);
    target.xor_row(0, m, 1);
    target.xor_row(0, m, 3);
    target.xor_row(0, m, 4);

    std::vector<uint8_t> x;
    REQUIRE(pf::gf2_solve_row(m, target, 0, x));
    BitMatrix recon(1, 12);
    for (std::size_t r = 0; r < 5; ++r)
        if (x[r]) recon.xor_row(0, m, r);
    CHECK(recon == target);
}

TEST_CASE("transpose and multiply") {
    BitMatrix a(2, 3);
    a.set(0, 0, true);
    a.set(0, 2, true);
    a.set(1, 1, true);
    const BitMatrix at = a.transposed();
    CHECK(at.n_rows() == 3);
    CHECK(at.get(2, 0));
    CHECK(at.get(1, 1));

    const BitMatrix prod = a.multiplied(at);
    CHECK_FALSE(prod.get(0, 0));  // row 0 has even weight
    CHECK(prod.get(1, 1));
    CHECK_FALSE(prod.get(0, 1));
}
