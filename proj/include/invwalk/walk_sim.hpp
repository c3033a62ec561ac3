#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "invwalk/rng.hpp"
#include "invwalk/spectral.hpp"

namespace invwalk {

enum class WalkVariant { full, k_restricted, lazy_hypercube };

struct WalkConfig {
    WalkVariant variant = WalkVariant::full;
    int n = 0;       // vertex count (full / k_restricted)
    int k = 0;       // subset size (k_restricted)
    int m_dim = 0;   // coordinate count (lazy_hypercube)
    std::int64_t horizon = 0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;

    int group_dim() const; // dimension of the F2 state space
    void validate() const;
};

// One-step kernel for all three variants; states are m-bit masks.
class WalkStepper {
public:
    explicit WalkStepper(const WalkConfig& cfg);

    // full: X gets n independent fair bits; k_restricted: X uniform among the
    // C(n,k) subsets by partial Fisher-Yates; lazy_hypercube: hold with
    // probability 1/2, else flip one uniform coordinate.
    std::uint64_t step(std::uint64_t state, SplitMix64& rng) const;

    std::uint64_t run(std::int64_t steps, SplitMix64& rng) const; // from state 0
    const WalkConfig& config() const { return cfg_; }

private:
    WalkConfig cfg_;
    std::vector<std::uint64_t> clique_table_; // subset mask -> v_X mask
};

// mu_t as exact integer counts over 2^{n t}: counts[z] / 2^{n t} = mu_t(z),
// by t-fold convolution of the step measure (never via the transform, so it
// can serve as an independent oracle). Capacity: n <= 5 and n*t <= 62.
struct EvolutionCounts {
    int n = 0;
    int m = 0;
    std::int64_t t = 0;
    std::vector<std::uint64_t> counts;
};
EvolutionCounts exact_evolution_counts(int n, std::int64_t t);

// Same evolution in doubles. Capacity: n <= 6.
std::vector<double> exact_evolution(int n, std::int64_t t);

// TV(mu_t, uniform) from the convolution route; exact dyadic when the
// integer route is feasible.
TvValue convolution_tv(int n, std::int64_t t);

enum class McTvMode { frequency, support };

struct McTvEstimate {
    McTvMode mode = McTvMode::frequency;
    double estimate = 0.0;
    double bias_bound = 0.0;      // sqrt(|support| / trials); frequency mode only
    std::uint64_t trials = 0;
    std::uint64_t support_size = 0;
};

// Plug-in TV between the empirical time-t histogram and the uniform law on
// the walk's support (F2^m for the full walk, the subgroup H_k for the
// k-restricted walk). Upward-biased; the bias bound is part of the result.
McTvEstimate mc_tv_frequency(const WalkConfig& cfg, std::int64_t t, int threads = 0);

// 1 - pi(B_t): the exact ball-based lower bound on d_n(t). Capacity: n <= 6.
McTvEstimate mc_tv_support(int n, std::int64_t t);

struct ProfileRow {
    std::int64_t t = 0;
    std::optional<double> d_exact;
    double d_l2_upper = 0.0;
    std::optional<double> d_paper_upper; // only for t >= n
    std::optional<double> d_paper_lower; // only for t <= n
    std::optional<double> d_mc_estimate; // not filled by cutoff_profile
};

// Rows t = 0..t_max combining the exact TV curve with every bound curve.
std::vector<ProfileRow> cutoff_profile(int n, std::int64_t t_max, int threads = 0);

struct HypercubeRow {
    std::int64_t t = 0;
    double statistic = 0.0; // TV(empirical Hamming-weight law, Binomial(m, 1/2))
};

// Coordinate-marginal mixing statistic for the lazy hypercube walk; a valid
// lower bound on the walk's TV distance up to Monte-Carlo error.
std::vector<HypercubeRow> hypercube_profile(int m, std::uint64_t trials,
                                            std::span<const std::int64_t> t_points,
                                            std::uint64_t seed, int threads = 0);

// Geometric grid around the (m/2) ln m mixing scale, plus t = 0.
std::vector<std::int64_t> default_hypercube_grid(int m);

} // namespace invwalk
