#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fourrank/arith/factor.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

struct sieve_config {
    std::uint64_t segment_size = 1 << 16;
    /// Largest X accepted; the sieve itself is O(sqrt X) memory, this bounds runtime.
    std::uint64_t max_x = std::uint64_t(1) << 40;
};

/// Primes up to limit by a plain Eratosthenes sieve.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    if (limit < 2)
        return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

/// Walk [1, X] in segments, dividing out every sieving prime, and call
/// emit(const factored_int&) for each squarefree m in increasing order (positive only).
template <class Emit>
void positive_squarefree_sieve(std::uint64_t X, Emit&& emit, const sieve_config& cfg = {})
{
    if (X < 1)
        throw domain_error("squarefree_sieve: X must be >= 1");
    if (X > cfg.max_x)
        throw resource_error("squarefree_sieve: X=" + std::to_string(X) + " exceeds configured bound");

    const auto sieving = primes_up_to(isqrt64(X));
    const std::uint64_t seg = std::max<std::uint64_t>(cfg.segment_size, 64);
    constexpr int max_small = 16;

    std::vector<std::uint64_t> rem(seg);
    std::vector<std::uint8_t> count(seg);
    std::vector<std::uint8_t> dead(seg);
    std::vector<std::uint32_t> small(seg * max_small);

    factored_int f;
    f.factors.reserve(32);

    for (std::uint64_t lo = 1; lo <= X; lo += seg) {
        const std::uint64_t hi = std::min(X + 1, lo + seg);
        const std::uint64_t len = hi - lo;
        for (std::uint64_t i = 0; i < len; ++i) {
            rem[i] = lo + i;
            count[i] = 0;
            dead[i] = 0;
        }
        for (std::uint64_t p : sieving) {
            std::uint64_t start = (lo + p - 1) / p * p;
            for (std::uint64_t v = start; v < hi; v += p) {
                const std::uint64_t i = v - lo;
                if (dead[i])
                    continue;
                rem[i] /= p;
                if (rem[i] % p == 0) {
                    dead[i] = 1;
                    continue;
                }
                small[i * max_small + count[i]++] = std::uint32_t(p);
            }
        }
        for (std::uint64_t i = 0; i < len; ++i) {
            if (dead[i])
                continue;
            const std::uint64_t v = lo + i;
            f.value = std::int64_t(v);
            f.sign = 1;
            f.factors.clear();
            for (int j = 0; j < count[i]; ++j)
                f.factors.push_back({small[i * max_small + j], 1});
            if (rem[i] > 1)
                f.factors.push_back({rem[i], 1});
            emit(static_cast<const factored_int&>(f));
        }
    }
}

/// Every squarefree n with 1 <= |n| <= X, both signs, each with its factorization.
/// Order: 1, -1, 2, -2, 3, -3, 5, -5, ...
template <class Emit>
void squarefree_sieve(std::uint64_t X, Emit&& emit, const sieve_config& cfg = {})
{
    factored_int neg;
    neg.factors.reserve(32);
    positive_squarefree_sieve(
        X,
        [&](const factored_int& pos) {
            emit(pos);
            neg.value = -pos.value;
            neg.sign = -1;
            neg.factors = pos.factors;
            emit(static_cast<const factored_int&>(neg));
        },
        cfg);
}

/// #{squarefree n : 1 <= |n| <= X}.
inline std::uint64_t squarefree_count(std::uint64_t X)
{
    std::uint64_t c = 0;
    positive_squarefree_sieve(X, [&](const factored_int&) { ++c; });
    return 2 * c;
}

} // namespace fourrank
