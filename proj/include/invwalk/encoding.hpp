#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "invwalk/gf2.hpp"

namespace invwalk {

// Bijection between the m = n(n-1)/2 unordered pairs {i,j} of {0,...,n-1}
// and coordinates 0..m-1, lexicographic on (i,j) with i < j.
class EdgeIndex {
public:
    explicit EdgeIndex(int n);

    int n() const { return n_; }
    int m() const { return m_; }

    int position(int i, int j) const;
    std::pair<int, int> pair_at(int position) const;

private:
    int n_ = 0;
    int m_ = 0;
};

// v_X: indicator of the pairs contained in X. `members` is a vertex bitmask.
Gf2Vector clique_vector(const EdgeIndex& idx, std::uint32_t members);
Gf2Vector clique_vector(const EdgeIndex& idx, std::span<const int> members);

// v_X for every subset mask of {0,...,n-1}, each packed into an m-bit word.
// Requires m <= 64 (n <= 11); the fast path for walks and spectra.
std::vector<std::uint64_t> clique_masks(int n);

// Tournament as the disagreement vector against the fixed reference
// tournament (every edge oriented from smaller to larger label).
struct TournamentCode {
    int n = 0;
    Gf2Vector z;
};

TournamentCode invert(TournamentCode code, std::uint32_t members);

// Largest n for which the 2^m state space is exhaustively enumerable here.
inline constexpr int kBallCapacity = 6;

// BFS distance from 0 to every state of F2^m in the Cayley graph generated by
// the clique vectors. Capacity: n <= 6 (2^15 states).
std::vector<std::uint8_t> inversion_distances(int n);

struct BallCurve {
    int n = 0;
    int m = 0;
    int diameter = 0;
    std::vector<std::uint64_t> cumulative; // cumulative[t] = |B_t|, t = 0..diameter

    std::uint64_t size_at(int t) const;    // |B_t| for any t >= 0
};

BallCurve ball_curve(int n);

// The inversion ball B_t around 0, materialised. Size is start-independent by
// vertex-transitivity of the Cayley graph.
std::vector<Gf2Vector> inversion_ball(int n, int t);
std::uint64_t inversion_ball_size(int n, int t);

// Minimum number of inversions transforming one code into the other.
int inversion_distance(int n, const Gf2Vector& z1, const Gf2Vector& z2);

} // namespace invwalk
