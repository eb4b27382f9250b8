#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fourrank/arith/int128.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

template <class Int> struct unsigned_of;
template <> struct unsigned_of<std::int64_t> { using type = std::uint64_t; };
template <> struct unsigned_of<i128> { using type = u128; };

template <class P> struct prime_power {
    P prime;
    int exponent;
    friend bool operator==(const prime_power&, const prime_power&) = default;
};

/// A nonzero integer together with its complete factorization.
///
/// value = sign * prod(prime^exponent); primes strictly increasing.
template <class Int> struct basic_factored {
    using prime_type = typename unsigned_of<Int>::type;

    Int value = 1;
    int sign = 1;
    std::vector<prime_power<prime_type>> factors;

    bool is_squarefree() const
    {
        return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.exponent == 1; });
    }

    /// Number of distinct prime divisors.
    int omega() const { return int(factors.size()); }

    bool divisible_by(prime_type p) const
    {
        return std::any_of(factors.begin(), factors.end(), [p](const auto& f) { return f.prime == p; });
    }

    /// Product of the factors with the sign applied; used to check the invariant.
    Int evaluate() const
    {
        Int v = 1;
        for (const auto& f : factors)
            for (int i = 0; i < f.exponent; ++i)
                v *= Int(f.prime);
        return sign * v;
    }
};

using factored_int = basic_factored<std::int64_t>;
using wide_factored_int = basic_factored<i128>;

namespace detail {

inline const std::vector<std::uint32_t>& small_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

inline bool miller_rabin_round(u128 n, u128 a, u128 d, int s)
{
    a %= n;
    if (a == 0)
        return true;
    u128 x = powmod128(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod128(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace detail

/// Miller-Rabin with the first thirteen prime bases: deterministic below 3.3e24,
/// strong probable-prime test above that.
inline bool is_prime(u128 n)
{
    if (n < 2)
        return false;
    static constexpr std::uint32_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (auto p : bases) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : bases)
        if (!detail::miller_rabin_round(n, a, d, s))
            return false;
    return true;
}

inline bool is_prime(std::uint64_t n) { return is_prime(u128(n)); }
inline bool is_prime(std::int64_t n) { return n > 0 && is_prime(u128(n)); }
inline bool is_prime(int n) { return n > 0 && is_prime(u128(n)); }

struct factor_config {
    /// Maximum Brent iterations per Pollard-rho attempt before giving up.
    std::uint64_t rho_budget = 50'000'000;
};

namespace detail {

inline u128 gcd_u128(u128 a, u128 b)
{
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor or 0 when the budget runs out.
inline u128 pollard_brent(u128 n, std::uint64_t budget)
{
    if (n % 2 == 0)
        return 2;
    std::uint64_t spent = 0;
    for (u128 c = 1; spent < budget; ++c) {
        auto f = [&](u128 x) {
            u128 y = mulmod128(x, x, n) + c;
            return y >= n ? y - n : y;
        };
        u128 y = 2, x = 2, ys = 2, g = 1, q = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        while (g == 1 && spent < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod128(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u128(q, n);
                k += m;
                spent += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u128(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n && g != 1)
            return g;
    }
    return 0;
}

inline void split_composite(u128 n, std::vector<u128>& out, const factor_config& cfg)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u128 sq = isqrt128(n);
    if (sq * sq == n) {
        split_composite(sq, out, cfg);
        split_composite(sq, out, cfg);
        return;
    }
    u128 d = pollard_brent(n, cfg.rho_budget);
    if (d == 0)
        throw resource_error("factorize: Pollard rho budget exhausted on composite " + to_string(i128(n)));
    split_composite(d, out, cfg);
    split_composite(n / d, out, cfg);
}

template <class Int> basic_factored<Int> factorize_impl(Int n, const factor_config& cfg)
{
    using P = typename basic_factored<Int>::prime_type;
    if (n == 0)
        throw domain_error("factorize: zero has no factorization");
    basic_factored<Int> out;
    out.value = n;
    out.sign = n < 0 ? -1 : 1;
    u128 m = abs_u128(i128(n));
    for (std::uint32_t p : small_primes()) {
        if (u128(p) * p > m)
            break;
        if (m % p)
            continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.factors.push_back({P(p), e});
    }
    if (m > 1) {
        std::vector<u128> rest;
        split_composite(m, rest, cfg);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i])
                ++j;
            out.factors.push_back({P(rest[i]), int(j - i)});
            i = j;
        }
    }
    return out;
}

} // namespace detail

/// Factor a nonzero 64-bit integer: trial division to 1e6, then Pollard-Brent.
inline factored_int factorize(std::int64_t n, const factor_config& cfg = {})
{
    return detail::factorize_impl<std::int64_t>(n, cfg);
}

/// Same as factorize() for 128-bit inputs.
inline wide_factored_int factorize_wide(i128 n, const factor_config& cfg = {})
{
    return detail::factorize_impl<i128>(n, cfg);
}

/// Positive squarefree kernel with sign: n = core * square.
inline std::int64_t squarefree_core(std::int64_t n)
{
    auto f = factorize(n);
    std::int64_t c = f.sign;
    for (const auto& pp : f.factors)
        if (pp.exponent % 2)
            c *= std::int64_t(pp.prime);
    return c;
}

inline bool is_squarefree(std::int64_t n)
{
    if (n == 0)
        return false;
    return factorize(n).is_squarefree();
}

/// Signed radical: product of distinct primes, carrying the sign of n.
inline std::int64_t signed_radical(const factored_int& f)
{
    std::int64_t r = f.sign;
    for (const auto& pp : f.factors)
        r *= std::int64_t(pp.prime);
    return r;
}

} // namespace fourrank
