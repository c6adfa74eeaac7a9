// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random numbers: every (seed, stream, counter) triple maps to
// the same value no matter which worker draws it, so path i is independent
// of scheduling and runs are reproducible bit for bit.
#pragma once

#include <cstdint>

namespace growthopt {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-stream counter RNG. Streams derived from the same master seed are
/// statistically independent (SplitMix64 finalizer over seed/stream/counter).
class CounterRng {
public:
    CounterRng(std::uint64_t master_seed, std::uint64_t stream)
        : key_(mix64(master_seed ^ mix64(stream * 0xd1342543de82ef95ULL + 1))) {}

    /// Uniform draw in the open interval (0,1).
    double uniform() {
        const std::uint64_t bits = mix64(key_ ^ (0x632be59bd9b4e019ULL * ++counter_));
        double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller, pair cached).
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace growthopt
