#include "invwalk/encoding.hpp"

#include <bit>
#include <deque>
#include <stdexcept>
#include <string>

namespace invwalk {

EdgeIndex::EdgeIndex(int n) : n_(n), m_(n * (n - 1) / 2) {
    if (n < 1) throw std::invalid_argument("EdgeIndex: n must be >= 1");
}

int EdgeIndex::position(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_ || i == j)
        throw std::invalid_argument("EdgeIndex::position: bad pair (" + std::to_string(i) +
                                    "," + std::to_string(j) + ") for n=" + std::to_string(n_));
    return i * (n_ - 1) - i * (i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> EdgeIndex::pair_at(int position) const {
    if (position < 0 || position >= m_)
        throw std::invalid_argument("EdgeIndex::pair_at: position out of range");
    int i = 0;
    int remaining = position;
    while (remaining >= n_ - 1 - i) {
        remaining -= n_ - 1 - i;
        ++i;
    }
    return {i, i + 1 + remaining};
}

Gf2Vector clique_vector(const EdgeIndex& idx, std::uint32_t members) {
    if (idx.n() < 32 && (members >> idx.n()) != 0)
        throw std::invalid_argument("clique_vector: vertex out of range");
    Gf2Vector v(static_cast<std::size_t>(idx.m()));
    std::uint32_t rest = members;
    while (rest) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        std::uint32_t higher = rest;
        while (higher) {
            int j = std::countr_zero(higher);
            higher &= higher - 1;
            v.set(static_cast<std::size_t>(idx.position(i, j)), true);
        }
    }
    return v;
}

Gf2Vector clique_vector(const EdgeIndex& idx, std::span<const int> members) {
    std::uint32_t mask = 0;
    for (int v : members) {
        if (v < 0 || v >= idx.n())
            throw std::invalid_argument("clique_vector: vertex out of range");
        mask |= std::uint32_t{1} << v;
    }
    return clique_vector(idx, mask);
}

std::vector<std::uint64_t> clique_masks(int n) {
    EdgeIndex idx(n);
    if (idx.m() > 64) throw CapacityError("clique_masks: m > 64");
    if (n > 20) throw CapacityError("clique_masks: 2^n table too large");
    std::vector<std::uint64_t> table(std::size_t{1} << n, 0);
    for (std::uint32_t x = 1; x < table.size(); ++x) {
        int i = std::countr_zero(x);
        std::uint32_t rest = x & (x - 1);
        std::uint64_t edges_to_rest = 0;
        std::uint32_t r = rest;
        while (r) {
            int j = std::countr_zero(r);
            r &= r - 1;
            edges_to_rest |= std::uint64_t{1} << idx.position(i, j);
        }
        table[x] = table[rest] ^ edges_to_rest;
    }
    return table;
}

TournamentCode invert(TournamentCode code, std::uint32_t members) {
    EdgeIndex idx(code.n);
    code.z ^= clique_vector(idx, members);
    return code;
}

std::vector<std::uint8_t> inversion_distances(int n) {
    if (n > kBallCapacity)
        throw CapacityError("inversion_distances: n > " + std::to_string(kBallCapacity) +
                            " (state space 2^" + std::to_string(n * (n - 1) / 2) + ")");
    EdgeIndex idx(n);
    const std::size_t states = std::size_t{1} << idx.m();

    // deduplicated generator set (v_empty and singletons all collapse to 0)
    std::vector<std::uint64_t> gens;
    {
        auto masks = clique_masks(n);
        std::vector<bool> seen(states, false);
        for (std::uint64_t g : masks) {
            if (g == 0 || seen[g]) continue;
            seen[g] = true;
            gens.push_back(g);
        }
    }

    constexpr std::uint8_t kUnseen = 0xff;
    std::vector<std::uint8_t> dist(states, kUnseen);
    std::deque<std::uint64_t> queue;
    dist[0] = 0;
    queue.push_back(0);
    while (!queue.empty()) {
        std::uint64_t z = queue.front();
        queue.pop_front();
        for (std::uint64_t g : gens) {
            std::uint64_t w = z ^ g;
            if (dist[w] == kUnseen) {
                dist[w] = static_cast<std::uint8_t>(dist[z] + 1);
                queue.push_back(w);
            }
        }
    }
    return dist;
}

BallCurve ball_curve(int n) {
    auto dist = inversion_distances(n);
    BallCurve curve;
    curve.n = n;
    curve.m = n * (n - 1) / 2;
    int diameter = 0;
    for (std::uint8_t d : dist) diameter = std::max(diameter, static_cast<int>(d));
    curve.diameter = diameter;
    curve.cumulative.assign(static_cast<std::size_t>(diameter) + 1, 0);
    for (std::uint8_t d : dist) ++curve.cumulative[d];
    for (std::size_t t = 1; t < curve.cumulative.size(); ++t)
        curve.cumulative[t] += curve.cumulative[t - 1];
    return curve;
}

std::uint64_t BallCurve::size_at(int t) const {
    if (t < 0) throw std::invalid_argument("BallCurve::size_at: t < 0");
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), cumulative.size() - 1);
    return cumulative[i];
}

std::vector<Gf2Vector> inversion_ball(int n, int t) {
    if (t < 0) throw std::invalid_argument("inversion_ball: t < 0");
    auto dist = inversion_distances(n);
    const int m = n * (n - 1) / 2;
    std::vector<Gf2Vector> ball;
    for (std::size_t z = 0; z < dist.size(); ++z)
        if (dist[z] <= t) ball.push_back(Gf2Vector::from_u64(z, static_cast<std::size_t>(m)));
    return ball;
}

std::uint64_t inversion_ball_size(int n, int t) {
    if (t < 0) throw std::invalid_argument("inversion_ball_size: t < 0");
    return ball_curve(n).size_at(t);
}

int inversion_distance(int n, const Gf2Vector& z1, const Gf2Vector& z2) {
    const std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (z1.size() != m || z2.size() != m)
        throw std::invalid_argument("inversion_distance: vector length != n(n-1)/2");
    auto dist = inversion_distances(n);
    // the Cayley graph is vertex-transitive under XOR translation
    return dist[(z1 ^ z2).to_u64()];
}

} // namespace invwalk
