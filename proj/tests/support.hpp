#pragma once

#include <cstdint>
#include <random>

#include "fourrank/arith/factor.hpp"

namespace fourrank::proptest {

/// Seeded generator for the property tests; every suite uses its own fixed seed.
class gen {
public:
    explicit gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    std::int64_t nonzero(std::int64_t bound)
    {
        for (;;)
            if (auto v = uniform(-bound, bound); v != 0)
                return v;
    }

    std::int64_t odd_positive(std::int64_t bound) { return 2 * uniform(0, (bound - 1) / 2) + 1; }

    /// Squarefree, nonzero, not 1, with |v| <= bound.
    std::int64_t squarefree(std::int64_t bound)
    {
        for (;;) {
            const auto v = nonzero(bound);
            if (v != 1 && is_squarefree(v))
                return v;
        }
    }

    bool coin() { return uniform(0, 1) == 1; }

private:
    std::mt19937_64 rng_;
};

} // namespace fourrank::proptest
