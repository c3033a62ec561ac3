#include "invwalk/rank_stats.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "invwalk/encoding.hpp"
#include "invwalk/errors.hpp"
#include "invwalk/gf2.hpp"
#include "invwalk/parallel.hpp"
#include "invwalk/rng.hpp"

namespace invwalk {

std::uint64_t RankCensus::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t c : count) t += c;
    return t;
}

RankCensus alternating_census(int n, int threads) {
    if (n < 1) throw std::invalid_argument("alternating_census: n must be >= 1");
    if (n > kCensusCapacity)
        throw CapacityError("alternating_census: n > " + std::to_string(kCensusCapacity));
    EdgeIndex idx(n);
    const int m = idx.m();
    const std::size_t n_forms = std::size_t{1} << m;

    std::vector<std::pair<std::uint8_t, std::uint8_t>> pair_of(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
        auto [i, j] = idx.pair_at(p);
        pair_of[static_cast<std::size_t>(p)] = {static_cast<std::uint8_t>(i),
                                                static_cast<std::uint8_t>(j)};
    }

    const std::size_t chunk = std::min<std::size_t>(n_forms, std::size_t{1} << 18);
    const std::size_t n_chunks = (n_forms + chunk - 1) / chunk;
    std::vector<std::vector<std::uint64_t>> partial(
        n_chunks, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));

    for_each_chunk(n_chunks, threads, [&](std::size_t c) {
        std::uint64_t rows[kCensusCapacity];
        auto& hist = partial[c];
        const std::size_t lo = c * chunk, hi = std::min(n_forms, lo + chunk);
        for (std::size_t a = lo; a < hi; ++a) {
            for (int v = 0; v < n; ++v) rows[v] = 0;
            std::uint64_t bits = a;
            while (bits) {
                int p = std::countr_zero(bits);
                bits &= bits - 1;
                auto [i, j] = pair_of[static_cast<std::size_t>(p)];
                rows[i] |= std::uint64_t{1} << j;
                rows[j] |= std::uint64_t{1} << i;
            }
            ++hist[static_cast<std::size_t>(
                rank_word_rows({rows, static_cast<std::size_t>(n)}))];
        }
    });

    RankCensus census;
    census.n = n;
    census.m = m;
    census.count.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& hist : partial)
        for (std::size_t r = 0; r < hist.size(); ++r) census.count[r] += hist[r];
    return census;
}

bool Pow2::dominates(std::uint64_t value) const {
    if (exponent >= 64) return true;
    if (exponent < 0) return value == 0;
    return value <= (std::uint64_t{1} << exponent);
}

double Pow2::to_double() const { return std::exp2(static_cast<double>(exponent)); }

Pow2 alt_count_bound(int n, int r) {
    if (r < 0 || r > n) throw std::invalid_argument("alt_count_bound: r out of [0, n]");
    if (r % 2 != 0) throw std::invalid_argument("alt_count_bound: r must be even");
    return Pow2{static_cast<long>(r) * (n - r) + r + static_cast<long>(r) * (r - 1) / 2};
}

double ExactRatio::to_double() const {
    if (num == 0) return 0.0;
    long bits = static_cast<long>(boost::multiprecision::msb(num));
    if (bits - den_log2 > 1000) return std::numeric_limits<double>::infinity();
    if (bits <= 900) return std::ldexp(num.convert_to<double>(), static_cast<int>(-den_log2));
    // keep the top bits, track the shifted-out exponent
    long shift = bits - 900;
    BigInt top = num >> shift;
    return std::ldexp(top.convert_to<double>(), static_cast<int>(shift - den_log2));
}

bool ExactRatio::less_than(const BigInt& value) const {
    if (den_log2 >= 0) return num < (value << den_log2);
    return (num << -den_log2) < value;
}

bool ExactRatio::at_least(std::uint64_t value) const { return !less_than(BigInt(value)); }

ExactRatio rank_tail_bound(int n, int s) {
    if (n < 1) throw std::invalid_argument("rank_tail_bound: n must be >= 1");
    if (s < 0 || s > n) throw std::invalid_argument("rank_tail_bound: s out of [0, n]");
    ExactRatio ratio;
    ratio.num = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(s));
    ratio.den_log2 = static_cast<long>(s) * (s - 1) / 2;
    return ratio;
}

double lowertail_bound(int n, int s) {
    ExactRatio tail = rank_tail_bound(n, s);
    // pi(B_{n-s}) <= n^s * 2^{n - s(s-1)/2}; nonvacuous iff that is < 1
    ExactRatio mass{tail.num, tail.den_log2 - n};
    if (!mass.less_than(BigInt(1))) return 0.0;
    return 1.0 - mass.to_double();
}

ExactRatio ball_volume_bound(int n, int s) {
    ExactRatio tail = rank_tail_bound(n, s);
    const long m = static_cast<long>(n) * (n - 1) / 2;
    return ExactRatio{tail.num, tail.den_log2 - m - n};
}

namespace {

struct WilsonInterval {
    double low, high;
};

WilsonInterval wilson_score(std::uint64_t hits, std::uint64_t trials) {
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double centre = (p + z2 / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

} // namespace

TailEstimate sample_symmetric_rank_tail(int n, std::uint64_t trials, std::uint64_t seed,
                                        int threads) {
    if (trials < 1) throw std::invalid_argument("sample_symmetric_rank_tail: trials < 1");
    if (n < 1 || n > 512)
        throw std::invalid_argument("sample_symmetric_rank_tail: n out of [1, 512]");

    const std::uint64_t batch_size = 4096;
    const std::uint64_t n_batches = (trials + batch_size - 1) / batch_size;
    std::vector<std::vector<std::uint64_t>> partial(
        n_batches, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));

    const bool single_word = n <= 64;
    for_each_chunk(n_batches, threads, [&](std::size_t b) {
        SplitMix64 rng(seed, b);
        auto& hist = partial[b];
        const std::uint64_t lo = b * batch_size;
        const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + batch_size);
        if (single_word) {
            std::uint64_t rows[64];
            std::uint64_t pool = 0;
            int pool_bits = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                for (int v = 0; v < n; ++v) rows[v] = 0;
                // strict upper triangle plus diagonal, mirrored
                for (int r = 0; r < n; ++r) {
                    for (int c = r; c < n; ++c) {
                        if (pool_bits == 0) {
                            pool = rng.next();
                            pool_bits = 64;
                        }
                        std::uint64_t bit = pool & 1;
                        pool >>= 1;
                        --pool_bits;
                        if (bit) {
                            rows[r] |= std::uint64_t{1} << c;
                            rows[c] |= std::uint64_t{1} << r;
                        }
                    }
                }
                ++hist[static_cast<std::size_t>(
                    rank_word_rows({rows, static_cast<std::size_t>(n)}))];
            }
        } else {
            for (std::uint64_t i = lo; i < hi; ++i) {
                Gf2Matrix mat(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
                std::uint64_t pool = 0;
                int pool_bits = 0;
                for (int r = 0; r < n; ++r) {
                    for (int c = r; c < n; ++c) {
                        if (pool_bits == 0) {
                            pool = rng.next();
                            pool_bits = 64;
                        }
                        bool bit = pool & 1;
                        pool >>= 1;
                        --pool_bits;
                        if (bit) {
                            mat.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                                    true);
                            mat.set(static_cast<std::size_t>(c), static_cast<std::size_t>(r),
                                    true);
                        }
                    }
                }
                ++hist[static_cast<std::size_t>(rank(mat))];
            }
        }
    });

    TailEstimate est;
    est.n = n;
    est.trials = trials;
    est.seed = seed;
    est.rank_histogram.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& hist : partial)
        for (std::size_t r = 0; r < hist.size(); ++r) est.rank_histogram[r] += hist[r];

    for (int s = 0; s <= n; ++s) {
        TailRow row;
        row.s = s;
        row.trials = trials;
        for (int r = 0; r <= n - s; ++r) row.hits += est.rank_histogram[static_cast<std::size_t>(r)];
        row.estimate = static_cast<double>(row.hits) / static_cast<double>(trials);
        auto ci = wilson_score(row.hits, trials);
        row.ci_low = ci.low;
        row.ci_high = ci.high;
        row.std_error =
            std::sqrt(row.estimate * (1.0 - row.estimate) / static_cast<double>(trials));
        row.bound = rank_tail_bound(n, s).to_double();
        est.rows.push_back(row);
    }
    return est;
}

} // namespace invwalk
