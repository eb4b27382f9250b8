#pragma once

#include <cstdint>
#include <optional>

#include "fourrank/arith/int128.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

/// Square root of a modulo an odd prime p by Tonelli-Shanks; nullopt when a is a non-residue.
inline std::optional<std::uint64_t> sqrt_mod_prime(std::int64_t a, std::uint64_t p)
{
    std::uint64_t x = std::uint64_t(((a % std::int64_t(p)) + std::int64_t(p)) % std::int64_t(p));
    if (p == 2)
        return x;
    if (x == 0)
        return 0;
    if (kronecker(std::int64_t(x), std::int64_t(p)) != 1)
        return std::nullopt;
    if (p % 4 == 3)
        return powmod64(x, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (kronecker(std::int64_t(z), std::int64_t(p)) != -1)
        ++z;
    std::uint64_t c = powmod64(z, q, p);
    std::uint64_t r = powmod64(x, (q + 1) / 2, p);
    std::uint64_t t = powmod64(x, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod64(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = mulmod64(b, b, p);
        r = mulmod64(r, b, p);
        c = mulmod64(b, b, p);
        t = mulmod64(t, c, p);
        m = i;
    }
    return r;
}

/// Inverse of a modulo m (gcd(a, m) = 1).
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m)
{
    i128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        i128 q = r / nr;
        i128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw domain_error("inverse_mod: not invertible");
    if (t < 0)
        t += m;
    return std::uint64_t(t);
}

/// Largest power p^N below 2^62, used as working p-adic precision.
struct padic_precision {
    std::uint64_t p;
    int digits;
    std::uint64_t modulus;

    explicit padic_precision(std::uint64_t prime) : p(prime), digits(0), modulus(1)
    {
        while (modulus <= (std::uint64_t(1) << 62) / p) {
            modulus *= p;
            ++digits;
        }
    }
};

/// A canonical square root of D in Z_p, reduced mod prec.modulus.
///
/// Odd p: the Hensel lift of the root r0 <= (p-1)/2 mod p; requires (D/p) = 1.
/// p = 2: the root congruent to 1 mod 4; requires D = 1 mod 8, and is exact mod 2^(N-1).
inline std::uint64_t padic_sqrt(std::int64_t D, const padic_precision& prec)
{
    const std::uint64_t p = prec.p;
    const std::uint64_t M = prec.modulus;
    const std::uint64_t Dm = std::uint64_t(((i128(D) % i128(M)) + i128(M)) % i128(M));
    if (p == 2) {
        if (((D % 8) + 8) % 8 != 1)
            throw domain_error("padic_sqrt: D must be 1 mod 8 for a 2-adic root");
        std::uint64_t r = 1;
        for (int k = 3; k < prec.digits; ++k) {
            const u128 mod = u128(1) << (k + 1);
            if ((u128(r) * r) % mod != u128(Dm) % mod)
                r += std::uint64_t(1) << (k - 1);
        }
        return r;
    }
    auto r0 = sqrt_mod_prime(D, p);
    if (!r0 || *r0 == 0)
        throw domain_error("padic_sqrt: D is not a nonzero square mod p");
    std::uint64_t r = std::min(*r0, p - *r0);
    // Newton iteration doubles the precision each step.
    std::uint64_t cur = p;
    while (cur < M) {
        const std::uint64_t next = (cur > M / cur) ? M : cur * cur;
        std::uint64_t f = std::uint64_t((u128(r) * r % next + next - Dm % next) % next);
        std::uint64_t inv = inverse_mod(2 * r % next, next);
        r = std::uint64_t((u128(r) + next - mulmod64(f, inv, next)) % next);
        cur = next;
    }
    return r;
}

/// v_p(x) for x given modulo p^N; returns N when x = 0 mod p^N (precision exhausted).
inline int padic_valuation(std::uint64_t x, const padic_precision& prec)
{
    if (x == 0)
        return prec.digits;
    int v = 0;
    while (x % prec.p == 0) {
        x /= prec.p;
        ++v;
    }
    return v;
}

/// x mod M for a signed 128-bit x.
inline std::uint64_t reduce_mod(i128 x, std::uint64_t M)
{
    i128 r = x % i128(M);
    if (r < 0)
        r += M;
    return std::uint64_t(r);
}

} // namespace fourrank
