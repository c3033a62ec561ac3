#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "invwalk/encoding.hpp"
#include "invwalk/rng.hpp"
#include "invwalk/spectral.hpp"
#include "invwalk/walk_sim.hpp"

using namespace invwalk;

namespace {

GraphLabel graph_from_mask(int n, std::uint64_t mask) {
    return GraphLabel{n, Gf2Vector::from_u64(mask, static_cast<std::size_t>(n * (n - 1) / 2))};
}

GraphLabel single_edge(int n) {
    EdgeIndex idx(n);
    Gf2Vector e(static_cast<std::size_t>(idx.m()));
    e.set(static_cast<std::size_t>(idx.position(0, 1)), true);
    return GraphLabel{n, e};
}

GraphLabel triangle(int n) {
    EdgeIndex idx(n);
    Gf2Vector e(static_cast<std::size_t>(idx.m()));
    e.set(static_cast<std::size_t>(idx.position(0, 1)), true);
    e.set(static_cast<std::size_t>(idx.position(0, 2)), true);
    e.set(static_cast<std::size_t>(idx.position(1, 2)), true);
    return GraphLabel{n, e};
}

} // namespace

TEST_CASE("quad_form_eval: zero input, single edge, triangle") {
    GraphLabel tri = triangle(3);
    CHECK(!quad_form_eval(tri, Gf2Vector(3)));

    GraphLabel e = single_edge(3);
    CHECK(quad_form_eval(e, Gf2Vector::from_u64(0b011, 3)));
    CHECK(!quad_form_eval(e, Gf2Vector::from_u64(0b001, 3)));

    CHECK(quad_form_eval(tri, Gf2Vector::from_u64(0b111, 3))); // 3 edges, odd

    // q_A(x) = <A, v_X>
    SplitMix64 rng(61);
    EdgeIndex idx(5);
    for (int trial = 0; trial < 50; ++trial) {
        GraphLabel a = graph_from_mask(5, rng.next() & 0x3ff);
        std::uint32_t x = static_cast<std::uint32_t>(rng.next() & 0x1f);
        Gf2Vector vx = clique_vector(idx, x);
        std::size_t overlap = 0;
        for (int p = 0; p < idx.m(); ++p)
            overlap += a.edges.get(static_cast<std::size_t>(p)) &&
                       vx.get(static_cast<std::size_t>(p));
        CHECK(quad_form_eval(a, Gf2Vector::from_u64(x, 5)) == ((overlap & 1) != 0));
    }
}

TEST_CASE("polarisation_matrix: examples and the defining identity") {
    CHECK(rank(polarisation_matrix(graph_from_mask(3, 0))) == 0);
    CHECK(rank(polarisation_matrix(single_edge(4))) == 2);
    CHECK(rank(polarisation_matrix(triangle(4))) == 2);

    // B(x,y) = q(x+y) + q(x) + q(y) + q(0), exhaustively for n = 4
    const int n = 4;
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        GraphLabel a = graph_from_mask(n, mask);
        Gf2Matrix b = polarisation_matrix(a);
        for (std::uint64_t xm = 0; xm < 16; ++xm)
            for (std::uint64_t ym = 0; ym < 16; ++ym) {
                Gf2Vector x = Gf2Vector::from_u64(xm, n), y = Gf2Vector::from_u64(ym, n);
                bool lhs = false;
                for (int i = 0; i < n; ++i)
                    if (x.get(static_cast<std::size_t>(i)))
                        for (int j = 0; j < n; ++j)
                            if (y.get(static_cast<std::size_t>(j)))
                                lhs ^= b.get(static_cast<std::size_t>(i),
                                             static_cast<std::size_t>(j));
                bool rhs = quad_form_eval(a, x ^ y) ^ quad_form_eval(a, x) ^
                           quad_form_eval(a, y);
                CHECK(lhs == rhs);
            }
        // alternating: B(x,x) = 0 via the zero diagonal
        for (int i = 0; i < n; ++i)
            CHECK(!b.get(static_cast<std::size_t>(i), static_cast<std::size_t>(i)));
    }

    // randomized identity check at n = 6
    SplitMix64 rng(909);
    for (int trial = 0; trial < 200; ++trial) {
        GraphLabel a = graph_from_mask(6, rng.next() & 0x7fff);
        Gf2Matrix b = polarisation_matrix(a);
        Gf2Vector x = Gf2Vector::from_u64(rng.next() & 0x3f, 6);
        Gf2Vector y = Gf2Vector::from_u64(rng.next() & 0x3f, 6);
        bool lhs = false;
        for (int i = 0; i < 6; ++i)
            if (x.get(static_cast<std::size_t>(i)))
                for (int j = 0; j < 6; ++j)
                    if (y.get(static_cast<std::size_t>(j)))
                        lhs ^= b.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        bool rhs = quad_form_eval(a, x ^ y) ^ quad_form_eval(a, x) ^ quad_form_eval(a, y);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("eigenvalue_exact: empty graph, single edge, triangle") {
    CHECK(eigenvalue_exact(graph_from_mask(4, 0)).reduced() == Dyadic{1, 0});
    for (int n = 2; n <= 7; ++n)
        CHECK(eigenvalue_exact(single_edge(n)).reduced() == Dyadic{1, 1}); // 1/2
    CHECK(eigenvalue_exact(triangle(3)).reduced() == Dyadic{0, 0});
    // the per-block argument is n-independent: free vertices just scale S
    CHECK(eigenvalue_exact(single_edge(14)).reduced() == Dyadic{1, 1});
    CHECK(eigenvalue_exact(triangle(12)).reduced() == Dyadic{0, 0});
}

TEST_CASE("full_spectrum n=3: eigenvalue multiset and rank histogram") {
    SpectrumTable s = full_spectrum(3);
    REQUIRE(s.gauss_sums.size() == 8);
    std::map<std::int64_t, int> mult;
    for (auto v : s.gauss_sums) ++mult[v];
    CHECK(mult[8] == 1); // lambda = 1
    CHECK(mult[4] == 6); // lambda = 1/2
    CHECK(mult[0] == 1); // lambda = 0 (the triangle)

    auto hist = s.rank_histogram();
    CHECK(hist[0] == 1);
    CHECK(hist[2] == 7);
}

TEST_CASE("full_spectrum: only A = 0 has rank 0; cross-check vs eigenvalue_exact") {
    for (int n = 3; n <= 5; ++n) {
        SpectrumTable s = full_spectrum(n);
        std::uint64_t rank0 = 0;
        for (auto r : s.ranks)
            if (r == 0) ++rank0;
        CHECK(rank0 == 1);
        CHECK(s.ranks[0] == 0);
        CHECK(s.gauss_sums[0] == (std::int64_t{1} << n));
    }
    SplitMix64 rng(2718);
    for (int n = 5; n <= 6; ++n) {
        SpectrumTable s = full_spectrum(n);
        const int m = n * (n - 1) / 2;
        for (int trial = 0; trial < 100; ++trial) {
            std::uint64_t a = rng.next() & ((std::uint64_t{1} << m) - 1);
            GraphLabel g = graph_from_mask(n, a);
            CHECK(eigenvalue_exact(g) == Dyadic{s.gauss_sums[a], n});
            CHECK(rank(polarisation_matrix(g)) == static_cast<int>(s.ranks[a]));
        }
    }
}

TEST_CASE("Gauss-sum bound and the observed dichotomy (exhaustive n <= 6)") {
    for (int n = 3; n <= 6; ++n) {
        SpectrumTable s = full_spectrum(n);
        for (std::size_t a = 0; a < s.gauss_sums.size(); ++a) {
            int r = s.ranks[a];
            CHECK(r % 2 == 0);
            std::int64_t cap = std::int64_t{1} << (n - r / 2);
            std::int64_t abs_s = std::abs(s.gauss_sums[a]);
            CHECK(abs_s <= cap);
            // stronger empirical pattern: |S| is 0 or exactly the cap
            CHECK((abs_s == 0 || abs_s == cap));
        }
    }
}

TEST_CASE("l2_tv_upper: t=0 and t=1 values, monotone decay") {
    SpectrumTable s = full_spectrum(3);
    CHECK(l2_tv_upper(s, 0) == doctest::Approx(0.5 * std::sqrt(7.0)).epsilon(1e-14));
    CHECK(l2_tv_upper(s, 1) == doctest::Approx(0.5 * std::sqrt(6.0 / 4.0)).epsilon(1e-14));
    double prev = l2_tv_upper(s, 0);
    for (std::int64_t t = 1; t <= 40; ++t) {
        double cur = l2_tv_upper(s, t);
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK(prev < 1e-11);
}

TEST_CASE("exact_tv n=3: (3/4) 2^-t on both routes") {
    SpectrumTable s = full_spectrum(3);
    for (std::int64_t t = 1; t <= 10; ++t) {
        TvValue fourier = exact_tv(s, t);
        REQUIRE(fourier.exact.has_value());
        CHECK(*fourier.exact == (Dyadic{3, static_cast<int>(t) + 2}.reduced()));

        TvValue conv = convolution_tv(3, t);
        REQUIRE(conv.exact.has_value());
        CHECK(*conv.exact == *fourier.exact);
        CHECK(std::fabs(conv.value - fourier.value) <= 1e-12);
    }
    CHECK(exact_tv(s, 1).value == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(exact_tv(s, 2).value == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK_THROWS_AS(exact_tv(s, 0), std::invalid_argument);

    // n=2 degenerates to a two-point chain: d_2(t) = 2^-(t+1), and the L2
    // bound is tight (single nonzero character)
    SpectrumTable s2 = full_spectrum(2);
    for (std::int64_t t = 1; t <= 8; ++t) {
        TvValue d = exact_tv(s2, t);
        REQUIRE(d.exact.has_value());
        CHECK(*d.exact == Dyadic{1, static_cast<int>(t) + 1});
        CHECK(l2_tv_upper(s2, t) == doctest::Approx(d.value).epsilon(1e-15));
    }
}

TEST_CASE("exact_tv vs convolution oracle, n <= 4, t <= 12") {
    for (int n = 3; n <= 4; ++n) {
        SpectrumTable s = full_spectrum(n);
        for (std::int64_t t = 1; t <= 12; ++t) {
            TvValue fourier = exact_tv(s, t);
            TvValue conv = convolution_tv(n, t);
            CHECK(std::fabs(fourier.value - conv.value) <= 1e-10);
            if (fourier.exact && conv.exact) CHECK(*fourier.exact == *conv.exact);
        }
    }
}

TEST_CASE("exact_tv: dominated by the L2 bound, nonnegative, non-increasing") {
    for (int n = 3; n <= 5; ++n) {
        SpectrumTable s = full_spectrum(n);
        double prev = 1.0;
        for (std::int64_t t = 1; t <= 3 * n; ++t) {
            double d = exact_tv(s, t).value;
            CHECK(d >= 0.0);
            CHECK(d <= l2_tv_upper(s, t) + 1e-12);
            CHECK(d <= prev + 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("uppertail bound: the constant and dominance at small n") {
    double c0 = uppertail_constant_c0();
    CHECK(c0 == doctest::Approx(0.5156555213034437).epsilon(1e-13));
    double c = 0.5 * std::sqrt(c0);
    CHECK(c == doctest::Approx(0.3590400).epsilon(1e-4));
    CHECK(uppertail_bound(0) == doctest::Approx(c).epsilon(1e-15));
    CHECK(uppertail_bound(3) == doctest::Approx(c / 8.0).epsilon(1e-15));

    for (int n = 3; n <= 5; ++n) {
        SpectrumTable s = full_spectrum(n);
        for (int cc = 0; cc <= 6; ++cc)
            CHECK(exact_tv(s, n + cc).value <= uppertail_bound(cc));
    }
}

TEST_CASE("pre-cutoff L2 sum: estimate below 2.252, exact below estimate") {
    for (int n : {2, 3, 4, 5, 8, 16, 32, 64}) {
        PreCutoffSum p = pre_cutoff_l2_sum(n);
        CHECK(p.estimate < 2.252);
        CHECK(p.alpha < 0.751);
    }
    PreCutoffSum p3 = pre_cutoff_l2_sum(3);
    REQUIRE(p3.exact_sum.has_value());
    CHECK(*p3.exact_sum == doctest::Approx(6.0 / 16.0).epsilon(1e-14));
    CHECK(p3.estimate == doctest::Approx(2.0).epsilon(1e-15));

    PreCutoffSum p5 = pre_cutoff_l2_sum(5);
    REQUIRE(p5.exact_sum.has_value());
    CHECK(*p5.exact_sum <= p5.estimate);

    // the full geometric series value, reproduced at every n >= 8
    PreCutoffSum p16 = pre_cutoff_l2_sum(16);
    CHECK(p16.estimate == doctest::Approx(2.2519540787034203).epsilon(1e-14));
}

TEST_CASE("spectral gap is exactly 1/2") {
    for (int n = 3; n <= 5; ++n) CHECK(spectral_gap(n) == 0.5);
}

TEST_CASE("capacity and argument errors") {
    CHECK_THROWS_AS(full_spectrum(8), CapacityError);
    CHECK_THROWS_AS(full_spectrum(99), CapacityError);
    CHECK_THROWS_AS(uppertail_bound(-1), std::invalid_argument);
    GraphLabel bad{3, Gf2Vector(2)};
    CHECK_THROWS_AS(eigenvalue_exact(bad), std::invalid_argument);
}
