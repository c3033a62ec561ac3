#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "invwalk/encoding.hpp"
#include "invwalk/gf2.hpp"

namespace invwalk {

// Undirected graph H_A on n vertices given by its edge indicator A in F2^m.
struct GraphLabel {
    int n = 0;
    Gf2Vector edges; // length n(n-1)/2 under EdgeIndex order
};

// Exact dyadic rational num / 2^den_log2.
struct Dyadic {
    std::int64_t num = 0;
    int den_log2 = 0;

    double to_double() const;
    Dyadic reduced() const;
    bool operator==(const Dyadic&) const = default;
};

// q_A(x): parity of the number of edges of H_A inside the support of x.
bool quad_form_eval(const GraphLabel& a, const Gf2Vector& x);

// Adjacency matrix of H_A over GF(2): the polarisation of q_A (symmetric,
// zero diagonal, hence of even rank).
Gf2Matrix polarisation_matrix(const GraphLabel& a);

// lambda_A = 2^-n * sum_x (-1)^{q_A(x)} by direct enumeration of F2^n.
// Capacity: n <= 24.
Dyadic eigenvalue_exact(const GraphLabel& a);

inline constexpr int kSpectrumCapacity = 7;

// Exact spectrum data for all 2^m characters: the integer Gauss sums
// S_A = 2^n * lambda_A and the polarisation ranks r(A).
struct SpectrumTable {
    int n = 0;
    int m = 0;
    std::vector<std::int64_t> gauss_sums; // indexed by A = 0..2^m-1
    std::vector<std::uint8_t> ranks;

    double lambda(std::uint64_t a) const;
    std::vector<std::uint64_t> rank_histogram() const; // index r -> #A with r(A)=r
    std::int64_t max_abs_gauss_sum_nonzero() const;    // max over A != 0
};

// One Walsh-Hadamard sweep over the clique-vector counting measure yields all
// S_A at once; ranks come from per-A elimination. Capacity: n <= 7.
SpectrumTable full_spectrum(int n, int threads = 0);

// (1/2) sqrt( sum_{A!=0} lambda_A^{2t} ), t >= 0.
double l2_tv_upper(const SpectrumTable& spectrum, std::int64_t t);

// mu_t as a double table over F2^m, via the Fourier expansion with start 0.
std::vector<double> fourier_distribution(const SpectrumTable& spectrum, std::int64_t t);

struct TvValue {
    double value = 0.0;
    std::optional<Dyadic> exact; // filled on the integer route (n <= 4)
};

// Exact total-variation distance d_n(t) between mu_t and uniform. Requires
// t >= 1: the Fourier expansion at t = 0 would need the 0^0 = 1 convention
// for the lambda_A = 0 terms, which we refuse to assume.
TvValue exact_tv(const SpectrumTable& spectrum, std::int64_t t, int threads = 0);
TvValue exact_tv(int n, std::int64_t t, int threads = 0);

// C0 = sum over even r >= 2 of 2^{-r(r-1)/2}, summed to convergence.
double uppertail_constant_c0();

// (1/2) sqrt(C0) * 2^-c: the universal upper-tail envelope at time n + c.
double uppertail_bound(int c);

struct PreCutoffSum {
    double estimate = 0.0;              // rank-grouped bound on sum_{A!=0} lambda^{2(n-1)}
    std::optional<double> exact_sum;    // the exact sum, n <= 7
    double alpha = 0.0;                 // (1/2) sqrt(estimate)
};

// The L2 sum one step before the cutoff time. The grouped estimate is
// sum over even r in [2, n] of 2^{-r(r-3)/2}; checks exact <= estimate and
// alpha < 0.751 where available.
PreCutoffSum pre_cutoff_l2_sum(int n, int threads = 0);

// 1 - max_{A != 0} |lambda_A|. Capacity: n <= 7.
double spectral_gap(const SpectrumTable& spectrum);
double spectral_gap(int n, int threads = 0);

} // namespace invwalk
