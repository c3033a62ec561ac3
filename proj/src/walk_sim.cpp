#include "invwalk/walk_sim.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "invwalk/encoding.hpp"
#include "invwalk/parallel.hpp"
#include "invwalk/rank_stats.hpp"
#include "invwalk/restricted.hpp"

namespace invwalk {

int WalkConfig::group_dim() const {
    if (variant == WalkVariant::lazy_hypercube) return m_dim;
    return n * (n - 1) / 2;
}

void WalkConfig::validate() const {
    if (horizon < 0) throw std::invalid_argument("WalkConfig: horizon < 0");
    if (trials < 1) throw std::invalid_argument("WalkConfig: trials < 1");
    switch (variant) {
    case WalkVariant::full:
        if (n < 2) throw std::invalid_argument("WalkConfig: n must be >= 2");
        if (n > 11) throw CapacityError("WalkConfig: full walk needs n <= 11 (state mask)");
        break;
    case WalkVariant::k_restricted:
        if (n < 2) throw std::invalid_argument("WalkConfig: n must be >= 2");
        if (n > 11) throw CapacityError("WalkConfig: k-restricted walk needs n <= 11");
        if (k < 0 || k > n) throw std::invalid_argument("WalkConfig: k out of [0, n]");
        break;
    case WalkVariant::lazy_hypercube:
        if (m_dim < 1) throw std::invalid_argument("WalkConfig: m must be >= 1");
        if (m_dim > 32) throw CapacityError("WalkConfig: hypercube walk needs m <= 32");
        break;
    }
}

WalkStepper::WalkStepper(const WalkConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    if (cfg_.variant != WalkVariant::lazy_hypercube) clique_table_ = clique_masks(cfg_.n);
}

std::uint64_t WalkStepper::step(std::uint64_t state, SplitMix64& rng) const {
    switch (cfg_.variant) {
    case WalkVariant::full: {
        std::uint64_t subset = rng.next() & ((std::uint64_t{1} << cfg_.n) - 1);
        return state ^ clique_table_[subset];
    }
    case WalkVariant::k_restricted: {
        // partial Fisher-Yates: exactly uniform over the C(n,k) subsets
        int verts[11];
        for (int i = 0; i < cfg_.n; ++i) verts[i] = i;
        std::uint64_t subset = 0;
        for (int i = 0; i < cfg_.k; ++i) {
            int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg_.n - i)));
            std::swap(verts[i], verts[j]);
            subset |= std::uint64_t{1} << verts[i];
        }
        return state ^ clique_table_[subset];
    }
    case WalkVariant::lazy_hypercube: {
        if (rng.next() & 1) return state;
        return state ^ (std::uint64_t{1} << rng.next_below(static_cast<std::uint64_t>(cfg_.m_dim)));
    }
    }
    return state;
}

std::uint64_t WalkStepper::run(std::int64_t steps, SplitMix64& rng) const {
    std::uint64_t state = 0;
    for (std::int64_t i = 0; i < steps; ++i) state = step(state, rng);
    return state;
}

EvolutionCounts exact_evolution_counts(int n, std::int64_t t) {
    if (n < 2 || n > 5)
        throw CapacityError("exact_evolution_counts: integer route needs 2 <= n <= 5");
    if (t < 0) throw std::invalid_argument("exact_evolution_counts: t < 0");
    if (n * t > 62) throw CapacityError("exact_evolution_counts: 2^(n t) exceeds 64 bits");

    EdgeIndex idx(n);
    const std::size_t states = std::size_t{1} << idx.m();
    auto table = clique_masks(n);

    EvolutionCounts ev;
    ev.n = n;
    ev.m = idx.m();
    ev.t = t;
    ev.counts.assign(states, 0);
    ev.counts[0] = 1;

    std::vector<std::uint64_t> next(states);
    for (std::int64_t s = 0; s < t; ++s) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t z = 0; z < states; ++z) {
            const std::uint64_t c = ev.counts[z];
            if (!c) continue;
            for (std::uint64_t v : table) next[z ^ v] += c;
        }
        ev.counts.swap(next);
    }

    std::uint64_t total = 0;
    for (std::uint64_t c : ev.counts) total += c;
    if (total != (std::uint64_t{1} << (static_cast<std::uint64_t>(n) * t)))
        throw VerificationError("exact_evolution_counts: mass not conserved");
    return ev;
}

std::vector<double> exact_evolution(int n, std::int64_t t) {
    if (n < 2 || n > 6) throw CapacityError("exact_evolution: float route needs 2 <= n <= 6");
    if (t < 0) throw std::invalid_argument("exact_evolution: t < 0");
    EdgeIndex idx(n);
    const std::size_t states = std::size_t{1} << idx.m();
    auto table = clique_masks(n);
    const double inv = std::ldexp(1.0, -n);

    std::vector<double> mu(states, 0.0);
    mu[0] = 1.0;
    std::vector<double> next(states);
    for (std::int64_t s = 0; s < t; ++s) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t z = 0; z < states; ++z) {
            const double p = mu[z];
            if (p == 0.0) continue;
            const double w = p * inv;
            for (std::uint64_t v : table) next[z ^ v] += w;
        }
        mu.swap(next);
    }

    KahanSum total;
    for (double p : mu) total.add(p);
    if (std::fabs(total.value() - 1.0) > 1e-12)
        throw VerificationError("exact_evolution: mass drifted to " +
                                std::to_string(total.value()));
    return mu;
}

TvValue convolution_tv(int n, std::int64_t t) {
    if (t < 0) throw std::invalid_argument("convolution_tv: t < 0");
    TvValue out;
    if (n <= 5 && n * t <= 62) {
        EvolutionCounts ev = exact_evolution_counts(n, t);
        const int m = ev.m;
        const __int128 uniform = static_cast<__int128>(1) << (static_cast<int>(n * t));
        unsigned __int128 numer = 0; // sum over z of |counts[z] 2^m - 2^{n t}|
        for (std::uint64_t c : ev.counts) {
            __int128 diff = (static_cast<__int128>(c) << m) - uniform;
            numer += static_cast<unsigned __int128>(diff < 0 ? -diff : diff);
        }
        int den_log2 = static_cast<int>(n * t) + m + 1;
        while (den_log2 > 0 && numer % 2 == 0) {
            numer /= 2;
            --den_log2;
        }
        if (numer <= static_cast<unsigned __int128>(INT64_MAX)) {
            out.exact = Dyadic{static_cast<std::int64_t>(numer), den_log2};
            out.value = out.exact->to_double();
            return out;
        }
    }
    std::vector<double> mu = exact_evolution(n, t);
    const double uniform = 1.0 / static_cast<double>(mu.size());
    KahanSum sum;
    for (double p : mu) sum.add(std::fabs(p - uniform));
    out.value = 0.5 * sum.value();
    return out;
}

namespace {

// Support of the k-restricted walk started at 0: the subgroup H_k, as a
// bitmap over F2^m. Enumerated from an echelon basis of the generators.
std::vector<std::uint64_t> subgroup_elements(int n, int k) {
    EdgeIndex idx(n);
    std::vector<std::uint64_t> basis;
    Gf2Echelon span(static_cast<std::size_t>(idx.m()));
    for (std::uint64_t x : k_subsets_colex(n, k)) {
        Gf2Vector v = clique_vector(idx, static_cast<std::uint32_t>(x));
        if (span.insert(v)) basis.push_back(v.to_u64());
    }
    std::vector<std::uint64_t> elements(std::size_t{1} << basis.size(), 0);
    for (std::size_t combo = 1; combo < elements.size(); ++combo) {
        int b = std::countr_zero(combo);
        elements[combo] = elements[combo & (combo - 1)] ^ basis[static_cast<std::size_t>(b)];
    }
    return elements;
}

} // namespace

McTvEstimate mc_tv_frequency(const WalkConfig& cfg, std::int64_t t, int threads) {
    WalkConfig run_cfg = cfg;
    run_cfg.horizon = t;
    run_cfg.validate();
    if (run_cfg.variant == WalkVariant::lazy_hypercube)
        throw std::invalid_argument("mc_tv_frequency: use hypercube_profile for the hypercube");
    if (run_cfg.n > 5)
        throw CapacityError("mc_tv_frequency: frequency mode needs n <= 5");

    const std::size_t states = std::size_t{1} << run_cfg.group_dim();
    const std::uint64_t batch_size = 4096;
    const std::uint64_t n_batches = (run_cfg.trials + batch_size - 1) / batch_size;
    std::vector<std::vector<std::uint32_t>> partial(n_batches,
                                                    std::vector<std::uint32_t>(states, 0));
    WalkStepper stepper(run_cfg);
    for_each_chunk(n_batches, threads, [&](std::size_t b) {
        SplitMix64 rng(run_cfg.seed, b);
        auto& hist = partial[b];
        const std::uint64_t lo = b * batch_size;
        const std::uint64_t hi = std::min<std::uint64_t>(run_cfg.trials, lo + batch_size);
        for (std::uint64_t i = lo; i < hi; ++i) ++hist[stepper.run(t, rng)];
    });
    std::vector<std::uint64_t> hist(states, 0);
    for (const auto& part : partial)
        for (std::size_t z = 0; z < states; ++z) hist[z] += part[z];

    // stationary law: uniform on the reachable subgroup
    std::vector<std::uint64_t> support;
    if (run_cfg.variant == WalkVariant::full) {
        support.resize(states);
        std::iota(support.begin(), support.end(), std::uint64_t{0});
    } else {
        support = subgroup_elements(run_cfg.n, run_cfg.k);
    }

    const double trials_d = static_cast<double>(run_cfg.trials);
    const double pi = 1.0 / static_cast<double>(support.size());
    std::vector<bool> in_support(states, false);
    KahanSum sum;
    for (std::uint64_t z : support) {
        in_support[z] = true;
        sum.add(std::fabs(static_cast<double>(hist[z]) / trials_d - pi));
    }
    for (std::size_t z = 0; z < states; ++z)
        if (!in_support[z] && hist[z] != 0)
            throw VerificationError("mc_tv_frequency: walk left its subgroup");

    McTvEstimate est;
    est.mode = McTvMode::frequency;
    est.trials = run_cfg.trials;
    est.support_size = support.size();
    est.estimate = 0.5 * sum.value();
    est.bias_bound = std::sqrt(static_cast<double>(support.size()) / trials_d);
    return est;
}

McTvEstimate mc_tv_support(int n, std::int64_t t) {
    if (t < 0) throw std::invalid_argument("mc_tv_support: t < 0");
    BallCurve curve = ball_curve(n);
    McTvEstimate est;
    est.mode = McTvMode::support;
    est.support_size = curve.size_at(static_cast<int>(std::min<std::int64_t>(t, curve.diameter)));
    est.estimate = 1.0 - std::ldexp(static_cast<double>(est.support_size), -curve.m);
    return est;
}

std::vector<ProfileRow> cutoff_profile(int n, std::int64_t t_max, int threads) {
    if (t_max < 0) throw std::invalid_argument("cutoff_profile: t_max < 0");
    SpectrumTable spectrum = full_spectrum(n, threads);
    std::vector<ProfileRow> rows;
    for (std::int64_t t = 0; t <= t_max; ++t) {
        ProfileRow row;
        row.t = t;
        row.d_l2_upper = l2_tv_upper(spectrum, t);
        if (t >= 1) row.d_exact = exact_tv(spectrum, t, threads).value;
        if (t >= n) row.d_paper_upper = uppertail_bound(static_cast<int>(t - n));
        if (t <= n) row.d_paper_lower = lowertail_bound(n, static_cast<int>(n - t));
        rows.push_back(row);
    }
    return rows;
}

std::vector<HypercubeRow> hypercube_profile(int m, std::uint64_t trials,
                                            std::span<const std::int64_t> t_points,
                                            std::uint64_t seed, int threads) {
    WalkConfig cfg;
    cfg.variant = WalkVariant::lazy_hypercube;
    cfg.m_dim = m;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.validate();
    if (m > 20) throw CapacityError("hypercube_profile: coordinate statistic needs m <= 20");

    // exact Binomial(m, 1/2) reference, as dyadic doubles
    std::vector<double> binom(static_cast<std::size_t>(m) + 1);
    {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(m) + 1, 0);
        c[0] = 1;
        for (int row = 1; row <= m; ++row)
            for (int w = row; w >= 1; --w) c[static_cast<std::size_t>(w)] += c[w - 1];
        for (int w = 0; w <= m; ++w)
            binom[static_cast<std::size_t>(w)] =
                std::ldexp(static_cast<double>(c[static_cast<std::size_t>(w)]), -m);
    }

    WalkStepper stepper(cfg);
    const std::uint64_t batch_size = 4096;
    const std::uint64_t n_batches = (trials + batch_size - 1) / batch_size;

    std::vector<HypercubeRow> rows;
    for (std::size_t ti = 0; ti < t_points.size(); ++ti) {
        const std::int64_t t = t_points[ti];
        if (t < 0) throw std::invalid_argument("hypercube_profile: t < 0");
        std::vector<std::vector<std::uint64_t>> partial(
            n_batches, std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0));
        for_each_chunk(n_batches, threads, [&](std::size_t b) {
            // one stream per (time point, batch)
            SplitMix64 rng(seed, (static_cast<std::uint64_t>(ti) << 32) | b);
            auto& hist = partial[b];
            const std::uint64_t lo = b * batch_size;
            const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + batch_size);
            for (std::uint64_t i = lo; i < hi; ++i)
                ++hist[static_cast<std::size_t>(std::popcount(stepper.run(t, rng)))];
        });
        std::vector<std::uint64_t> hist(static_cast<std::size_t>(m) + 1, 0);
        for (const auto& part : partial)
            for (std::size_t w = 0; w < hist.size(); ++w) hist[w] += part[w];

        double sum = 0.0;
        for (std::size_t w = 0; w < hist.size(); ++w)
            sum += std::fabs(static_cast<double>(hist[w]) / static_cast<double>(trials) -
                             binom[w]);
        rows.push_back({t, 0.5 * sum});
    }
    return rows;
}

std::vector<std::int64_t> default_hypercube_grid(int m) {
    const double scale = 0.5 * m * std::log(static_cast<double>(m));
    const double factors[] = {0.1, 0.2, 0.35, 0.5, 0.7, 0.85, 1.0, 1.2, 1.5, 2.0, 3.0};
    std::vector<std::int64_t> grid{0};
    for (double f : factors) {
        std::int64_t t = std::llround(f * scale);
        if (grid.empty() || t != grid.back()) grid.push_back(t);
    }
    return grid;
}

} // namespace invwalk
