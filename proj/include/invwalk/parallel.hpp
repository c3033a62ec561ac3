#pragma once

#include <cstddef>
#include <functional>

namespace invwalk {

// 0 means "use all hardware threads"; always returns >= 1.
int resolve_threads(int requested);

// Runs body(chunk) for chunk in [0, chunk_count), distributing chunks over at
// most `threads` workers. The chunk decomposition is fixed by the caller, so
// any result merged by chunk index is independent of the thread count.
void for_each_chunk(std::size_t chunk_count, int threads,
                    const std::function<void(std::size_t)>& body);

// Compensated (Kahan) accumulator; merge order must be deterministic.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    void merge(const KahanSum& other) {
        add(other.sum);
        add(-other.carry);
    }
    double value() const { return sum; }
};

} // namespace invwalk
