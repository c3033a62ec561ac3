#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invwalk/gf2.hpp"
#include "invwalk/spectral.hpp"

namespace invwalk {

// W_{2,k}(n): rows indexed by 2-subsets (EdgeIndex order), columns by
// k-subsets in colexicographic order; entry 1 iff containment. Column X is
// exactly clique_vector(n, X).
Gf2Matrix inclusion_matrix(int n, int k);

// All k-subsets of {0,...,n-1} as bitmasks in colexicographic order (which is
// numeric order of the masks).
std::vector<std::uint64_t> k_subsets_colex(int n, int k);

// rank_F2 W_{2,k}(n) from the closed-form term census: term j in {0,1,2}
// contributes C(n,j) - C(n,j-1) iff C(k-j, 2-j) is odd. Main range only
// (n >= 4, 2 <= k <= n-2); other (n,k) are input errors (see boundary_dims).
int wilson_rank(int n, int k);

// The elimination oracle: rank of the inclusion matrix.
int hk_dimension(int n, int k);

struct ParityFingerprint {
    Gf2Vector degree_parity; // length n
    bool edge_parity = false;
};

// (degree parities, |F| mod 2) of an edge set F; both are linear in F.
ParityFingerprint parity_fingerprint(const Gf2Vector& edges, int n);

// The mod-2 vertex-edge incidence map of K_n as an n x m matrix.
Gf2Matrix degree_parity_matrix(int n);

// dim V_k per k mod 4 (m, m-1, m-n+1, m-n), computed from the closed form
// AND from kernel_basis on the stacked parity maps; disagreement throws.
int vk_dimension(int n, int k);

// Basis of V_k (kernel of the parity constraints active for this k).
std::vector<Gf2Vector> vk_kernel_basis(int n, int k);

struct HkReport {
    int n = 0;
    int k = 0;
    int k_mod_4 = 0;
    int wilson_rank = 0;
    int elimination_rank = 0;
    int vk_dim = 0;
    bool generators_in_vk = false;
    int membership_checked = 0;
    bool membership_ok = true;
    bool pass = false;
    std::string failure; // empty when pass
};

// Full verification that H_k = V_k at one (n, k): generator parity checks,
// the three-way dimension comparison, and optional random-membership checks
// (V_k samples expressed in the column span of the inclusion matrix).
HkReport verify_hk_equals_vk(int n, int k, int membership_samples = 100);

// dim H_k at the boundary k in {0, 1, n-1, n}: 0, 0, (n odd ? n : n-1), 1.
// Verified against span_dim of the actual generators before returning.
int boundary_dims(int n, int k);

// Exact rational num/den.
struct Rational {
    long long num = 0;
    long long den = 1;

    double to_double() const;
    Rational reduced() const;
    bool operator==(const Rational&) const = default;
};

// Eigenvalue of the k-restricted walk at character A: the mean of
// (-1)^{|E(H_A[X])|} over the C(n,k) k-subsets X.
Rational restricted_eigenvalue(const GraphLabel& a, int k);

} // namespace invwalk
