#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "invwalk/encoding.hpp"
#include "invwalk/restricted.hpp"
#include "invwalk/rng.hpp"

using namespace invwalk;

TEST_CASE("k_subsets_colex: counts and order") {
    auto s = k_subsets_colex(4, 2);
    CHECK(s == std::vector<std::uint64_t>{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100});
    CHECK(k_subsets_colex(5, 0) == std::vector<std::uint64_t>{0});
    CHECK(k_subsets_colex(5, 5).size() == 1);
    CHECK(k_subsets_colex(10, 4).size() == 210);
}

TEST_CASE("inclusion_matrix: n=4 k=2 permutation, n=4 k=4, n=5 k=3 weights") {
    Gf2Matrix w42 = inclusion_matrix(4, 2);
    CHECK(w42.rows() == 6);
    CHECK(w42.cols() == 6);
    // each row and each column has exactly one 1: a permutation matrix
    for (std::size_t r = 0; r < 6; ++r) CHECK(w42.row(r).popcount() == 1);
    CHECK(rank(w42) == 6);
    // reindexing columns by the pair order turns it into the identity
    EdgeIndex idx(4);
    auto cols = k_subsets_colex(4, 2);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        int i = std::countr_zero(cols[c]);
        int j = std::countr_zero(cols[c] & (cols[c] - 1));
        std::size_t p = static_cast<std::size_t>(idx.position(i, j));
        CHECK(w42.get(p, c));
    }

    Gf2Matrix w44 = inclusion_matrix(4, 4);
    CHECK(w44.cols() == 1);
    for (std::size_t r = 0; r < 6; ++r) CHECK(w44.get(r, 0));

    Gf2Matrix w53 = inclusion_matrix(5, 3);
    CHECK(w53.rows() == 10);
    CHECK(w53.cols() == 10);
    Gf2Matrix w53t = w53.transposed();
    for (std::size_t c = 0; c < 10; ++c) CHECK(w53t.row(c).popcount() == 3); // C(3,2) pairs
    for (std::size_t r = 0; r < 10; ++r) CHECK(w53.row(r).popcount() == 3);  // C(3,1) supersets
}

TEST_CASE("wilson_rank: closed-form table values") {
    CHECK(wilson_rank(6, 3) == 10); // m - n + 1, k = 3 mod 4
    CHECK(wilson_rank(6, 4) == 14); // m - 1, k = 0 mod 4
    CHECK(wilson_rank(7, 2) == 21); // m, k = 2 mod 4
    CHECK(wilson_rank(7, 5) == 14); // m - n, k = 1 mod 4

    CHECK_THROWS_AS(wilson_rank(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(wilson_rank(6, 1), std::invalid_argument);
    CHECK_THROWS_AS(wilson_rank(6, 5), std::invalid_argument);
}

TEST_CASE("wilson_rank equals the elimination oracle") {
    for (int n = 4; n <= 9; ++n)
        for (int k = 2; k <= n - 2; ++k) CHECK(wilson_rank(n, k) == hk_dimension(n, k));
    CHECK(hk_dimension(4, 2) == 6);
    // outside the main range the closed form does not apply; elimination
    // lands on the boundary value instead (six 5-subsets, one relation)
    CHECK(hk_dimension(6, 5) == 5);
    CHECK(hk_dimension(6, 5) == boundary_dims(6, 5));
}

TEST_CASE("parity_fingerprint: cliques, triangle, zero, linearity") {
    for (int n : {5, 6, 8}) {
        EdgeIndex idx(n);
        for (int k = 2; k <= n; ++k) {
            std::uint32_t x = (std::uint32_t{1} << k) - 1; // X = {0..k-1}
            ParityFingerprint fp = parity_fingerprint(clique_vector(idx, x), n);
            for (int v = 0; v < n; ++v) {
                bool in_x = v < k;
                bool expect = in_x && ((k - 1) % 2 == 1);
                CHECK(fp.degree_parity.get(static_cast<std::size_t>(v)) == expect);
            }
            CHECK(fp.edge_parity == ((k * (k - 1) / 2) % 2 == 1));
        }
    }

    EdgeIndex idx(5);
    ParityFingerprint tri = parity_fingerprint(clique_vector(idx, std::uint32_t{0b111}), 5);
    CHECK(tri.degree_parity.is_zero());
    CHECK(tri.edge_parity);

    ParityFingerprint zero = parity_fingerprint(Gf2Vector(10), 5);
    CHECK(zero.degree_parity.is_zero());
    CHECK(!zero.edge_parity);

    SplitMix64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        Gf2Vector f = Gf2Vector::from_u64(rng.next() & 0x3ff, 10);
        Gf2Vector g = Gf2Vector::from_u64(rng.next() & 0x3ff, 10);
        ParityFingerprint ff = parity_fingerprint(f, 5);
        ParityFingerprint fg = parity_fingerprint(g, 5);
        ParityFingerprint fsum = parity_fingerprint(f ^ g, 5);
        CHECK(fsum.degree_parity == (ff.degree_parity ^ fg.degree_parity));
        CHECK(fsum.edge_parity == (ff.edge_parity != fg.edge_parity));
    }
}

TEST_CASE("kernel dimensions of the parity maps") {
    for (int n = 4; n <= 9; ++n) {
        const int m = n * (n - 1) / 2;
        Gf2Matrix d = degree_parity_matrix(n);
        CHECK(rank(d) == n - 1);
        CHECK(static_cast<int>(kernel_basis(d).size()) == m - n + 1);

        Gf2Matrix e(1, static_cast<std::size_t>(m));
        for (int p = 0; p < m; ++p) e.set(0, static_cast<std::size_t>(p), true);
        CHECK(static_cast<int>(kernel_basis(e).size()) == m - 1);

        Gf2Matrix both(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(m));
        for (int v = 0; v < n; ++v) both.set_row(static_cast<std::size_t>(v),
                                                 d.row(static_cast<std::size_t>(v)));
        both.set_row(static_cast<std::size_t>(n), e.row(0));
        CHECK(static_cast<int>(kernel_basis(both).size()) == m - n);
    }
}

TEST_CASE("vk_dimension by k mod 4") {
    CHECK(vk_dimension(6, 2) == 15);     // m
    CHECK(vk_dimension(7, 4) == 20);     // m - 1
    CHECK(vk_dimension(7, 3) == 15);     // m - n + 1
    CHECK(vk_dimension(7, 5) == 14);     // m - n, k = 1 mod 4
    CHECK(vk_dimension(9, 5) == 27);     // m - n, k = 1 mod 4
    CHECK_THROWS_AS(vk_dimension(6, 5), std::invalid_argument); // outside the main range
}

TEST_CASE("verify_hk_equals_vk: main range sweep up to n=8") {
    for (int n = 4; n <= 8; ++n)
        for (int k = 2; k <= n - 2; ++k) {
            HkReport r = verify_hk_equals_vk(n, k, 25);
            CHECK(r.pass);
            CHECK(r.wilson_rank == r.elimination_rank);
            CHECK(r.wilson_rank == r.vk_dim);
            CHECK(r.generators_in_vk);
            CHECK(r.membership_ok);
        }
}

TEST_CASE("obstruction pattern by k mod 4") {
    // odd k: all generators have zero degree parity
    {
        EdgeIndex idx(6);
        for (std::uint64_t x : k_subsets_colex(6, 3))
            CHECK(parity_fingerprint(clique_vector(idx, static_cast<std::uint32_t>(x)), 6)
                      .degree_parity.is_zero());
    }
    // k = 4: all generators have even edge count, some have nonzero degree parity
    {
        EdgeIndex idx(8);
        bool some_degree = false;
        for (std::uint64_t x : k_subsets_colex(8, 4)) {
            ParityFingerprint fp =
                parity_fingerprint(clique_vector(idx, static_cast<std::uint32_t>(x)), 8);
            CHECK(!fp.edge_parity);
            some_degree = some_degree || !fp.degree_parity.is_zero();
        }
        CHECK(some_degree);
    }
    // k = 2 mod 4: edge parity is odd on every generator (no obstruction used)
    {
        EdgeIndex idx(6);
        for (std::uint64_t x : k_subsets_colex(6, 2))
            CHECK(parity_fingerprint(clique_vector(idx, static_cast<std::uint32_t>(x)), 6)
                      .edge_parity);
    }
}

TEST_CASE("boundary_dims: degenerate k") {
    for (int n = 4; n <= 10; ++n) {
        CHECK(boundary_dims(n, 0) == 0);
        CHECK(boundary_dims(n, 1) == 0);
        CHECK(boundary_dims(n, n) == 1);
        CHECK(boundary_dims(n, n - 1) == (n % 2 == 1 ? n : n - 1));
    }
    CHECK_THROWS_AS(boundary_dims(8, 3), std::invalid_argument);
}

TEST_CASE("k = n-1 relation: full sum vanishes iff n even; proper sub-sums never") {
    for (int n = 4; n <= 10; ++n) {
        EdgeIndex idx(n);
        std::uint32_t all = (n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
        std::vector<Gf2Vector> gens;
        for (int i = 0; i < n; ++i)
            gens.push_back(clique_vector(idx, all ^ (std::uint32_t{1} << i)));

        // exhaustive over all sub-sums
        for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n); ++subset) {
            Gf2Vector sum(static_cast<std::size_t>(idx.m()));
            for (int i = 0; i < n; ++i)
                if ((subset >> i) & 1) sum ^= gens[static_cast<std::size_t>(i)];
            if (subset == all)
                CHECK(sum.is_zero() == (n % 2 == 0));
            else
                CHECK(!sum.is_zero());
        }
    }
}

TEST_CASE("restricted_eigenvalue: examples") {
    EdgeIndex idx4(4);
    GraphLabel zero{4, Gf2Vector(6)};
    CHECK(restricted_eigenvalue(zero, 2) == Rational{1, 1});

    Gf2Vector e(6);
    e.set(static_cast<std::size_t>(idx4.position(0, 1)), true);
    GraphLabel edge{4, e};
    CHECK(restricted_eigenvalue(edge, 2) == Rational{2, 3});  // (5 - 1) / 6
    CHECK(restricted_eigenvalue(edge, 4) == Rational{-1, 1}); // single odd term

    // |lambda| <= 1 on random graphs
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        GraphLabel a{6, Gf2Vector::from_u64(rng.next() & 0x7fff, 15)};
        for (int k = 0; k <= 6; ++k) {
            Rational lam = restricted_eigenvalue(a, k);
            CHECK(std::abs(lam.to_double()) <= 1.0 + 1e-15);
        }
    }

    // edge vector beyond the 64-bit fast path: n=12, single edge, k=2
    EdgeIndex idx12(12);
    Gf2Vector e12(static_cast<std::size_t>(idx12.m()));
    e12.set(static_cast<std::size_t>(idx12.position(0, 1)), true);
    CHECK(restricted_eigenvalue(GraphLabel{12, e12}, 2) == Rational{32, 33}); // (66-2)/66

    CHECK_THROWS_AS(inclusion_matrix(17, 2), CapacityError);
}

TEST_CASE("restricted eigenvalue is 1 exactly on characters orthogonal to H_k") {
    const int n = 5, k = 3;
    EdgeIndex idx(n);
    // A  is orthogonal to H_k iff <A, v_X> = 0 for all |X| = k: kernel of the
    // matrix whose rows are the generators
    auto subsets = k_subsets_colex(n, k);
    Gf2Matrix gen(subsets.size(), static_cast<std::size_t>(idx.m()));
    for (std::size_t r = 0; r < subsets.size(); ++r)
        gen.set_row(r, clique_vector(idx, static_cast<std::uint32_t>(subsets[r])));
    auto ortho = kernel_basis(gen);
    CHECK(!ortho.empty());

    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Gf2Vector a(static_cast<std::size_t>(idx.m()));
        for (const auto& b : ortho)
            if (rng.next() & 1) a ^= b;
        CHECK(restricted_eigenvalue(GraphLabel{n, a}, k) == Rational{1, 1});
    }
    // and the all-states character (k = n case picks up -1 on odd cliques)
    GraphLabel tri{n, clique_vector(idx, std::uint32_t{0b111})};
    Rational lam = restricted_eigenvalue(tri, k);
    CHECK(lam != Rational{1, 1});
}
