#pragma once

/**
 * @file rng.hpp
 * @brief Seeded random streams. Replication j of a run owns
 *        RandomStream(master_seed, j); no global generator exists.
 */

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace oppenheim {

class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                          static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                          0x4f50504eu};
        engine_.seed(seq);
    }

    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on (0, 1], 53 random bits; never returns 0 so 1/U is finite.
    double uniform_open_closed() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on (0, 1).
    double uniform_open() {
        return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// Uniform on (a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform_open(); }

    /// Standard exponential.
    double exponential() { return -std::log(uniform_open_closed()); }

private:
    std::mt19937_64 engine_;
};

} // namespace oppenheim
