#include "invwalk/restricted.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "invwalk/encoding.hpp"
#include "invwalk/rng.hpp"

namespace invwalk {

namespace {

std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t num = 1, den = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t g;
        num *= static_cast<std::uint64_t>(n - k + i);
        den *= static_cast<std::uint64_t>(i);
        g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return num / den;
}

void check_main_range(const char* who, int n, int k) {
    if (n < 4 || k < 2 || k > n - 2)
        throw std::invalid_argument(std::string(who) +
                                    ": requires n >= 4 and 2 <= k <= n-2 "
                                    "(use boundary_dims for k in {0,1,n-1,n})");
}

} // namespace

std::vector<std::uint64_t> k_subsets_colex(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("k_subsets_colex: k out of [0, n]");
    if (n > 63) throw CapacityError("k_subsets_colex: n > 63");
    std::vector<std::uint64_t> subsets;
    if (k == 0) {
        subsets.push_back(0);
        return subsets;
    }
    // colex order on k-subsets is numeric order of their bitmasks; walk them
    // with Gosper's hack
    std::uint64_t x = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (x < limit) {
        subsets.push_back(x);
        std::uint64_t u = x & (~x + 1);
        std::uint64_t v = x + u;
        if (v == 0) break;
        x = v + (((v ^ x) / u) >> 2);
    }
    return subsets;
}

Gf2Matrix inclusion_matrix(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("inclusion_matrix: k out of [0, n]");
    if (n > 16) throw CapacityError("inclusion_matrix: n > 16");
    EdgeIndex idx(n);
    auto cols = k_subsets_colex(n, k);
    Gf2Matrix w(static_cast<std::size_t>(idx.m()), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Gf2Vector v = clique_vector(idx, static_cast<std::uint32_t>(cols[c]));
        for (int p = 0; p < idx.m(); ++p)
            if (v.get(static_cast<std::size_t>(p))) w.set(static_cast<std::size_t>(p), c, true);
    }
    return w;
}

int wilson_rank(int n, int k) {
    check_main_range("wilson_rank", n, k);
    int rank = 0;
    for (int j = 0; j <= 2; ++j) {
        if (binomial_u64(k - j, 2 - j) % 2 == 0) continue;
        rank += static_cast<int>(binomial_u64(n, j)) -
                (j >= 1 ? static_cast<int>(binomial_u64(n, j - 1)) : 0);
    }
    return rank;
}

int hk_dimension(int n, int k) { return rank(inclusion_matrix(n, k)); }

ParityFingerprint parity_fingerprint(const Gf2Vector& edges, int n) {
    EdgeIndex idx(n);
    if (edges.size() != static_cast<std::size_t>(idx.m()))
        throw std::invalid_argument("parity_fingerprint: edge vector length != n(n-1)/2");
    ParityFingerprint fp;
    fp.degree_parity = Gf2Vector(static_cast<std::size_t>(n));
    for (int p = 0; p < idx.m(); ++p) {
        if (!edges.get(static_cast<std::size_t>(p))) continue;
        auto [i, j] = idx.pair_at(p);
        fp.degree_parity.flip(static_cast<std::size_t>(i));
        fp.degree_parity.flip(static_cast<std::size_t>(j));
    }
    fp.edge_parity = edges.popcount() & 1;
    return fp;
}

Gf2Matrix degree_parity_matrix(int n) {
    EdgeIndex idx(n);
    Gf2Matrix d(static_cast<std::size_t>(n), static_cast<std::size_t>(idx.m()));
    for (int p = 0; p < idx.m(); ++p) {
        auto [i, j] = idx.pair_at(p);
        d.set(static_cast<std::size_t>(i), static_cast<std::size_t>(p), true);
        d.set(static_cast<std::size_t>(j), static_cast<std::size_t>(p), true);
    }
    return d;
}

namespace {

// Constraint matrix whose kernel is V_k, by k mod 4: none / e / partial / both.
Gf2Matrix vk_constraints(int n, int k) {
    EdgeIndex idx(n);
    const std::size_t m = static_cast<std::size_t>(idx.m());
    const int residue = ((k % 4) + 4) % 4;
    Gf2Matrix d = degree_parity_matrix(n);
    std::size_t rows = 0;
    if (residue == 0)
        rows = 1; // ker(e)
    else if (residue == 3)
        rows = static_cast<std::size_t>(n); // ker(degree parity)
    else if (residue == 1)
        rows = static_cast<std::size_t>(n) + 1; // both
    Gf2Matrix c(rows, m);
    std::size_t next = 0;
    if (residue == 3 || residue == 1)
        for (int v = 0; v < n; ++v) c.set_row(next++, d.row(static_cast<std::size_t>(v)));
    if (residue == 0 || residue == 1) {
        Gf2Vector ones(m);
        for (std::size_t p = 0; p < m; ++p) ones.set(p, true);
        c.set_row(next++, ones);
    }
    return c;
}

int vk_dimension_closed_form(int n, int k) {
    const int m = n * (n - 1) / 2;
    switch (((k % 4) + 4) % 4) {
    case 2: return m;
    case 0: return m - 1;
    case 3: return m - n + 1;
    default: return m - n;
    }
}

} // namespace

int vk_dimension(int n, int k) {
    check_main_range("vk_dimension", n, k);
    const int m = n * (n - 1) / 2;
    const int closed = vk_dimension_closed_form(n, k);
    const int by_kernel = m - rank(vk_constraints(n, k));
    if (closed != by_kernel)
        throw VerificationError("vk_dimension: closed form " + std::to_string(closed) +
                                " != kernel dimension " + std::to_string(by_kernel) + " at n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
    return closed;
}

std::vector<Gf2Vector> vk_kernel_basis(int n, int k) {
    check_main_range("vk_kernel_basis", n, k);
    return kernel_basis(vk_constraints(n, k));
}

HkReport verify_hk_equals_vk(int n, int k, int membership_samples) {
    check_main_range("verify_hk_equals_vk", n, k);
    HkReport report;
    report.n = n;
    report.k = k;
    report.k_mod_4 = ((k % 4) + 4) % 4;
    report.wilson_rank = wilson_rank(n, k);
    report.vk_dim = vk_dimension(n, k);

    EdgeIndex idx(n);
    auto subsets = k_subsets_colex(n, k);

    // (a) every generator satisfies the parity constraints of V_k
    const bool need_degree = report.k_mod_4 == 3 || report.k_mod_4 == 1;
    const bool need_edge = report.k_mod_4 == 0 || report.k_mod_4 == 1;
    report.generators_in_vk = true;
    Gf2Echelon column_span(static_cast<std::size_t>(idx.m()));
    for (std::uint64_t x : subsets) {
        Gf2Vector v = clique_vector(idx, static_cast<std::uint32_t>(x));
        ParityFingerprint fp = parity_fingerprint(v, n);
        if ((need_degree && !fp.degree_parity.is_zero()) || (need_edge && fp.edge_parity)) {
            report.generators_in_vk = false;
            report.failure = "generator violates parity constraints";
        }
        column_span.insert(std::move(v));
    }
    report.elimination_rank = static_cast<int>(column_span.rank());

    // (b) three-way dimension agreement
    if (report.failure.empty() &&
        (report.elimination_rank != report.wilson_rank || report.vk_dim != report.wilson_rank))
        report.failure = "dimension mismatch (wilson=" + std::to_string(report.wilson_rank) +
                         " elimination=" + std::to_string(report.elimination_rank) +
                         " vk=" + std::to_string(report.vk_dim) + ")";

    // (c) random V_k members must lie in the column span
    if (membership_samples > 0) {
        auto basis = vk_kernel_basis(n, k);
        SplitMix64 rng(0x9a7c1ce5u ^ (static_cast<std::uint64_t>(n) << 8) ^
                       static_cast<std::uint64_t>(k));
        for (int i = 0; i < membership_samples; ++i) {
            Gf2Vector sample(static_cast<std::size_t>(idx.m()));
            for (const Gf2Vector& b : basis)
                if (rng.next() & 1) sample ^= b;
            ++report.membership_checked;
            if (!column_span.contains(sample)) {
                report.membership_ok = false;
                if (report.failure.empty()) report.failure = "V_k sample outside column span";
                break;
            }
        }
    }

    report.pass = report.failure.empty();
    return report;
}

int boundary_dims(int n, int k) {
    if (n < 2) throw std::invalid_argument("boundary_dims: n must be >= 2");
    if (n > 64) throw CapacityError("boundary_dims: n > 64");
    if (!(k == 0 || k == 1 || k == n - 1 || k == n))
        throw std::invalid_argument("boundary_dims: k must be in {0, 1, n-1, n}");

    int expected;
    if (k <= 1)
        expected = 0;
    else if (k == n)
        expected = 1;
    else
        expected = (n % 2 == 1) ? n : n - 1;

    EdgeIndex idx(n);
    std::vector<Gf2Vector> gens;
    if (k == 0) {
        gens.push_back(clique_vector(idx, std::uint32_t{0}));
    } else if (k == 1) {
        for (int i = 0; i < n && i < 32; ++i)
            gens.push_back(clique_vector(idx, std::uint32_t{1} << i));
    } else if (k == n) {
        Gf2Vector ones(static_cast<std::size_t>(idx.m()));
        for (int p = 0; p < idx.m(); ++p) ones.set(static_cast<std::size_t>(p), true);
        gens.push_back(std::move(ones));
    } else { // k == n - 1: complements of singletons
        Gf2Vector full(static_cast<std::size_t>(idx.m()));
        for (int p = 0; p < idx.m(); ++p) full.set(static_cast<std::size_t>(p), true);
        for (int i = 0; i < n; ++i) {
            Gf2Vector v = full;
            for (int j = 0; j < n; ++j)
                if (j != i) v.flip(static_cast<std::size_t>(idx.position(std::min(i, j),
                                                                         std::max(i, j))));
            gens.push_back(std::move(v));
        }
    }
    const int computed = span_dim(gens);
    if (computed != expected)
        throw VerificationError("boundary_dims: span_dim " + std::to_string(computed) +
                                " != closed form " + std::to_string(expected));
    return expected;
}

double Rational::to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

Rational Rational::reduced() const {
    if (num == 0) return {0, 1};
    long long g = std::gcd(num < 0 ? -num : num, den);
    long long sign = den < 0 ? -1 : 1;
    return {sign * num / g, sign * den / g};
}

Rational restricted_eigenvalue(const GraphLabel& a, int k) {
    EdgeIndex idx(a.n);
    if (a.edges.size() != static_cast<std::size_t>(idx.m()))
        throw std::invalid_argument("restricted_eigenvalue: edge vector length != n(n-1)/2");
    if (k < 0 || k > a.n)
        throw std::invalid_argument("restricted_eigenvalue: k out of [0, n]");
    if (a.n > 63) throw CapacityError("restricted_eigenvalue: n > 63");
    std::uint64_t count = binomial_u64(a.n, k);
    if (count > (std::uint64_t{1} << 28))
        throw CapacityError("restricted_eigenvalue: C(n,k) too large");

    // adjacency rows of H_A; parity of E(H_A[X]) counts each edge once via
    // the higher endpoint
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(a.n), 0);
    for (int p = 0; p < idx.m(); ++p) {
        if (!a.edges.get(static_cast<std::size_t>(p))) continue;
        auto [i, j] = idx.pair_at(p);
        adj[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
        adj[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
    }

    long long signed_sum = 0;
    for (std::uint64_t x : k_subsets_colex(a.n, k)) {
        int parity = 0;
        std::uint64_t rest = x;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            parity ^= std::popcount(adj[static_cast<std::size_t>(v)] & rest) & 1;
        }
        signed_sum += parity ? -1 : 1;
    }
    return Rational{signed_sum, static_cast<long long>(count)}.reduced();
}

} // namespace invwalk
