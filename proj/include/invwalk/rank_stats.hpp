#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace invwalk {

using BigInt = boost::multiprecision::cpp_int;

// Exact counts of alternating bilinear forms (symmetric zero-diagonal
// matrices) on F2^n, by rank.
struct RankCensus {
    int n = 0;
    int m = 0;                        // n(n-1)/2 free entries
    std::vector<std::uint64_t> count; // index r = 0..n; nonzero only at even r

    std::uint64_t total() const;
};

inline constexpr int kCensusCapacity = 8; // n = 8 is the opt-in long run

RankCensus alternating_census(int n, int threads = 0);

// An exact power of two, stored by exponent.
struct Pow2 {
    long exponent = 0;

    bool dominates(std::uint64_t value) const;
    double to_double() const;
};

// Upper bound 2^{r(n-r) + r + r(r-1)/2} on the number of alternating forms of
// even rank r.
Pow2 alt_count_bound(int n, int r);

// Exact ratio num * 2^{-den_log2} with arbitrary-precision numerator
// (den_log2 may be negative, making the value an integer multiple).
struct ExactRatio {
    BigInt num;
    long den_log2 = 0;

    double to_double() const;
    bool less_than(const BigInt& value) const; // compare against an integer
    bool at_least(std::uint64_t value) const;
};

// n^s * 2^{-s(s-1)/2}: tail bound for the rank of a uniform symmetric matrix,
// P(rank <= n - s) <= bound.
ExactRatio rank_tail_bound(int n, int s);

// max(0, 1 - 2^n * n^s * 2^{-s(s-1)/2}); positivity decided exactly.
double lowertail_bound(int n, int s);

// 2^{m+n} * n^s * 2^{-s(s-1)/2}: volume bound for the inversion ball B_{n-s}.
ExactRatio ball_volume_bound(int n, int s);

struct TailRow {
    int s = 0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;   // samples with rank <= n - s
    double estimate = 0.0;
    double ci_low = 0.0;      // Wilson score interval, 95%
    double ci_high = 0.0;
    double std_error = 0.0;
    double bound = 0.0;       // may exceed 1 (vacuous)
};

struct TailEstimate {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> rank_histogram; // index = rank, 0..n
    std::vector<TailRow> rows;                 // s = 0..n
};

// Uniform samples from Sym_n(F2) (all n(n+1)/2 entry bits independent and
// fair, diagonal included); one rank histogram serves every s. Batches own
// independent rng streams, so results do not depend on the thread count.
TailEstimate sample_symmetric_rank_tail(int n, std::uint64_t trials, std::uint64_t seed,
                                        int threads = 0);

} // namespace invwalk
