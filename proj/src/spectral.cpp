#include "invwalk/spectral.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "invwalk/parallel.hpp"

namespace invwalk {

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num), -den_log2); }

Dyadic Dyadic::reduced() const {
    Dyadic d = *this;
    while (d.den_log2 > 0 && d.num % 2 == 0) {
        d.num /= 2;
        --d.den_log2;
    }
    if (d.num == 0) d.den_log2 = 0;
    return d;
}

bool quad_form_eval(const GraphLabel& a, const Gf2Vector& x) {
    if (a.edges.size() != static_cast<std::size_t>(a.n) * (a.n - 1) / 2)
        throw std::invalid_argument("quad_form_eval: edge vector length != n(n-1)/2");
    if (x.size() != static_cast<std::size_t>(a.n))
        throw std::invalid_argument("quad_form_eval: x length != n");
    EdgeIndex idx(a.n);
    std::size_t count = 0;
    for (int p = 0; p < idx.m(); ++p) {
        if (!a.edges.get(static_cast<std::size_t>(p))) continue;
        auto [i, j] = idx.pair_at(p);
        count += x.get(static_cast<std::size_t>(i)) && x.get(static_cast<std::size_t>(j));
    }
    return count & 1;
}

Gf2Matrix polarisation_matrix(const GraphLabel& a) {
    EdgeIndex idx(a.n);
    if (a.edges.size() != static_cast<std::size_t>(idx.m()))
        throw std::invalid_argument("polarisation_matrix: edge vector length != n(n-1)/2");
    Gf2Matrix b(static_cast<std::size_t>(a.n), static_cast<std::size_t>(a.n));
    for (int p = 0; p < idx.m(); ++p) {
        if (!a.edges.get(static_cast<std::size_t>(p))) continue;
        auto [i, j] = idx.pair_at(p);
        b.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), true);
        b.set(static_cast<std::size_t>(j), static_cast<std::size_t>(i), true);
    }
    return b;
}

Dyadic eigenvalue_exact(const GraphLabel& a) {
    if (a.n > 24) throw CapacityError("eigenvalue_exact: n > 24 (2^n enumeration)");
    EdgeIndex idx(a.n);
    if (a.edges.size() != static_cast<std::size_t>(idx.m()))
        throw std::invalid_argument("eigenvalue_exact: edge vector length != n(n-1)/2");

    std::uint32_t adj[24] = {0};
    for (int p = 0; p < idx.m(); ++p) {
        if (!a.edges.get(static_cast<std::size_t>(p))) continue;
        auto [i, j] = idx.pair_at(p);
        adj[i] |= std::uint32_t{1} << j;
        adj[j] |= std::uint32_t{1} << i;
    }

    // q(x) = q(x minus its lowest vertex) + edges from that vertex into the rest
    const std::size_t states = std::size_t{1} << a.n;
    std::vector<std::uint8_t> q(states, 0);
    std::int64_t sum = 1; // x = 0 contributes +1
    for (std::size_t x = 1; x < states; ++x) {
        std::size_t rest = x & (x - 1);
        int v = std::countr_zero(x);
        q[x] = q[rest] ^ (std::popcount(adj[v] & static_cast<std::uint32_t>(rest)) & 1);
        sum += q[x] ? -1 : 1;
    }
    return Dyadic{sum, a.n};
}

double SpectrumTable::lambda(std::uint64_t a) const {
    return std::ldexp(static_cast<double>(gauss_sums[a]), -n);
}

std::vector<std::uint64_t> SpectrumTable::rank_histogram() const {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint8_t r : ranks) ++hist[r];
    return hist;
}

std::int64_t SpectrumTable::max_abs_gauss_sum_nonzero() const {
    std::int64_t best = 0;
    for (std::size_t a = 1; a < gauss_sums.size(); ++a)
        best = std::max(best, std::abs(gauss_sums[a]));
    return best;
}

SpectrumTable full_spectrum(int n, int threads) {
    if (n < 2) throw std::invalid_argument("full_spectrum: n must be >= 2");
    if (n > kSpectrumCapacity)
        throw CapacityError("full_spectrum: n > " + std::to_string(kSpectrumCapacity) +
                            " (2^" + std::to_string(n * (n - 1) / 2) + " graphs)");
    EdgeIndex idx(n);
    const int m = idx.m();
    const std::size_t n_graphs = std::size_t{1} << m;

    // counting measure of the clique vectors, then one transform
    SignedTable g = SignedTable::zeros(m);
    for (std::uint64_t mask : clique_masks(n)) ++g.values[mask];
    g = walsh_hadamard(std::move(g));

    SpectrumTable table;
    table.n = n;
    table.m = m;
    table.gauss_sums = std::move(g.values);
    table.ranks.assign(n_graphs, 0);

    std::vector<std::pair<std::uint8_t, std::uint8_t>> pair_of(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
        auto [i, j] = idx.pair_at(p);
        pair_of[static_cast<std::size_t>(p)] = {static_cast<std::uint8_t>(i),
                                                static_cast<std::uint8_t>(j)};
    }

    const std::size_t chunk = std::min<std::size_t>(n_graphs, std::size_t{1} << 16);
    const std::size_t n_chunks = (n_graphs + chunk - 1) / chunk;
    for_each_chunk(n_chunks, threads, [&](std::size_t c) {
        std::uint64_t rows[8];
        const std::size_t lo = c * chunk, hi = std::min(n_graphs, lo + chunk);
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
            table.ranks[a] =
                static_cast<std::uint8_t>(rank_word_rows({rows, static_cast<std::size_t>(n)}));
        }
    });

    if (table.gauss_sums[0] != (std::int64_t{1} << n))
        throw VerificationError("full_spectrum: S_0 != 2^n");
    return table;
}

double l2_tv_upper(const SpectrumTable& spectrum, std::int64_t t) {
    if (t < 0) throw std::invalid_argument("l2_tv_upper: t < 0");
    // group by |S_A|: the sum has very few distinct magnitudes
    std::unordered_map<std::int64_t, std::uint64_t> mult;
    for (std::size_t a = 1; a < spectrum.gauss_sums.size(); ++a)
        ++mult[std::abs(spectrum.gauss_sums[a])];

    double sum = 0.0;
    for (auto [s, count] : mult) {
        double term;
        if (t == 0)
            term = 1.0; // lambda^0 = 1 for every character, including lambda = 0
        else if (s == 0)
            continue;
        else
            term = std::exp2(static_cast<double>(2 * t) *
                             (std::log2(static_cast<double>(s)) - spectrum.n));
        sum += static_cast<double>(count) * term;
    }
    return 0.5 * std::sqrt(sum);
}

namespace {

std::vector<double> lambda_power_table(const SpectrumTable& spectrum, std::int64_t t) {
    std::unordered_map<std::int64_t, double> cache;
    std::vector<double> table(spectrum.gauss_sums.size());
    for (std::size_t a = 0; a < table.size(); ++a) {
        std::int64_t s = spectrum.gauss_sums[a];
        auto it = cache.find(s);
        if (it == cache.end()) {
            double lam = std::ldexp(static_cast<double>(s), -spectrum.n);
            it = cache.emplace(s, std::pow(lam, static_cast<double>(t))).first;
        }
        table[a] = it->second;
    }
    return table;
}

// |base|^t in __int128 with overflow detection; nullopt when out of range.
std::optional<__int128> checked_ipow(std::int64_t base, std::int64_t t) {
    __int128 acc = 1;
    for (std::int64_t i = 0; i < t; ++i) {
        if (__builtin_mul_overflow(acc, static_cast<__int128>(base), &acc)) return std::nullopt;
        __int128 mag = acc < 0 ? -acc : acc;
        if (mag > (static_cast<__int128>(1) << 120)) return std::nullopt;
    }
    return acc;
}

// Exact dyadic TV via integer Fourier inversion; requires m + n*t small
// enough for 128-bit arithmetic.
std::optional<Dyadic> exact_tv_integer(const SpectrumTable& spectrum, std::int64_t t) {
    const int m = spectrum.m;
    if (spectrum.n > 4) return std::nullopt;
    if (m + spectrum.n * t + 2 >= 126) return std::nullopt;

    const std::size_t size = std::size_t{1} << m;
    std::vector<__int128> powers(size);
    for (std::size_t a = 0; a < size; ++a) {
        auto p = checked_ipow(spectrum.gauss_sums[a], t);
        if (!p) return std::nullopt;
        powers[a] = *p;
    }
    // butterfly over __int128; values bounded by 2^{m + n t}
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                __int128 a = powers[i], b = powers[i + half];
                powers[i] = a + b;
                powers[i + half] = a - b;
            }
        }
    }
    const __int128 uniform = static_cast<__int128>(1) << (spectrum.n * t); // 2^{nt}
    unsigned __int128 numer = 0;
    for (std::size_t z = 0; z < size; ++z) {
        __int128 diff = powers[z] - uniform;
        if (powers[z] < 0)
            throw VerificationError("exact_tv: negative probability at state " +
                                    std::to_string(z));
        numer += static_cast<unsigned __int128>(diff < 0 ? -diff : diff);
    }
    int den_log2 = m + static_cast<int>(spectrum.n * t) + 1;
    while (den_log2 > 0 && numer % 2 == 0) {
        numer /= 2;
        --den_log2;
    }
    if (numer > static_cast<unsigned __int128>(INT64_MAX)) return std::nullopt;
    Dyadic d{static_cast<std::int64_t>(numer), den_log2};
    return d.reduced();
}

} // namespace

std::vector<double> fourier_distribution(const SpectrumTable& spectrum, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("fourier_distribution: t must be >= 1");
    std::vector<double> table = lambda_power_table(spectrum, t);
    walsh_hadamard_inplace(table);
    const double scale = std::ldexp(1.0, -spectrum.m);
    for (double& v : table) v *= scale;
    return table;
}

TvValue exact_tv(const SpectrumTable& spectrum, std::int64_t t, int threads) {
    if (t < 1)
        throw std::invalid_argument("exact_tv: t must be >= 1 (the t = 0 expansion is not "
                                    "defined without a 0^0 convention)");
    std::vector<double> mu = fourier_distribution(spectrum, t);
    const double uniform = std::ldexp(1.0, -spectrum.m);

    const std::size_t size = mu.size();
    const std::size_t chunk = std::min<std::size_t>(size, std::size_t{1} << 14);
    const std::size_t n_chunks = (size + chunk - 1) / chunk;
    std::vector<KahanSum> partial(n_chunks);
    std::vector<KahanSum> mass(n_chunks);
    for_each_chunk(n_chunks, threads, [&](std::size_t c) {
        const std::size_t lo = c * chunk, hi = std::min(size, lo + chunk);
        for (std::size_t z = lo; z < hi; ++z) {
            if (mu[z] < -1e-12)
                throw VerificationError("exact_tv: negative probability " +
                                        std::to_string(mu[z]));
            partial[c].add(std::fabs(mu[z] - uniform));
            mass[c].add(mu[z]);
        }
    });
    KahanSum tv, total;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        tv.merge(partial[c]);
        total.merge(mass[c]);
    }
    if (std::fabs(total.value() - 1.0) > 1e-9)
        throw VerificationError("exact_tv: probabilities sum to " + std::to_string(total.value()));

    TvValue result;
    result.exact = exact_tv_integer(spectrum, t);
    result.value = result.exact ? result.exact->to_double() : 0.5 * tv.value();
    return result;
}

TvValue exact_tv(int n, std::int64_t t, int threads) {
    return exact_tv(full_spectrum(n, threads), t, threads);
}

double uppertail_constant_c0() {
    double sum = 0.0;
    for (int r = 2;; r += 2) {
        double term = std::exp2(-0.5 * static_cast<double>(r) * (r - 1));
        sum += term;
        if (term < 1e-30) break;
    }
    return sum;
}

double uppertail_bound(int c) {
    if (c < 0) throw std::invalid_argument("uppertail_bound: c < 0");
    return 0.5 * std::sqrt(uppertail_constant_c0()) * std::exp2(-static_cast<double>(c));
}

PreCutoffSum pre_cutoff_l2_sum(int n, int threads) {
    if (n < 2) throw std::invalid_argument("pre_cutoff_l2_sum: n must be >= 2");
    PreCutoffSum out;
    for (int r = 2; r <= n; r += 2)
        out.estimate += std::exp2(-0.5 * static_cast<double>(r) * (r - 3));
    out.alpha = 0.5 * std::sqrt(out.estimate);

    if (n <= kSpectrumCapacity) {
        SpectrumTable spectrum = full_spectrum(n, threads);
        std::unordered_map<std::int64_t, std::uint64_t> mult;
        for (std::size_t a = 1; a < spectrum.gauss_sums.size(); ++a)
            ++mult[std::abs(spectrum.gauss_sums[a])];
        double sum = 0.0;
        for (auto [s, count] : mult) {
            if (s == 0) continue;
            sum += static_cast<double>(count) *
                   std::exp2(2.0 * static_cast<double>(n - 1) *
                             (std::log2(static_cast<double>(s)) - n));
        }
        out.exact_sum = sum;
        if (sum > out.estimate * (1.0 + 1e-12))
            throw VerificationError("pre_cutoff_l2_sum: exact sum exceeds grouped estimate");
        if (0.5 * std::sqrt(sum) >= 0.751)
            throw VerificationError("pre_cutoff_l2_sum: exact alpha >= 0.751");
    }
    if (out.alpha >= 0.751)
        throw VerificationError("pre_cutoff_l2_sum: estimate alpha >= 0.751");
    return out;
}

double spectral_gap(const SpectrumTable& spectrum) {
    return 1.0 - std::ldexp(static_cast<double>(spectrum.max_abs_gauss_sum_nonzero()),
                            -spectrum.n);
}

double spectral_gap(int n, int threads) { return spectral_gap(full_spectrum(n, threads)); }

} // namespace invwalk
