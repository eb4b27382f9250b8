#pragma once

#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include "fourrank/arith/int128.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

/// A place of Q: an odd prime, 2, or the real place.
struct place {
    /// 0 encodes the archimedean place.
    std::uint64_t p = 0;

    static constexpr place infinity() { return {0}; }
    static constexpr place prime(std::uint64_t q) { return {q}; }

    constexpr bool is_infinite() const { return p == 0; }
    constexpr bool is_dyadic() const { return p == 2; }

    std::string to_string() const { return is_infinite() ? std::string("inf") : std::to_string(p); }

    friend constexpr bool operator==(place, place) = default;
    friend constexpr auto operator<=>(place, place) = default;
};

/// Exponent of p in n (n != 0).
inline int valuation(i128 n, u128 p)
{
    int v = 0;
    u128 m = abs_u128(n);
    if (m == 0)
        return 1 << 20;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

inline int valuation(std::int64_t n, std::uint64_t p) { return valuation(i128(n), u128(p)); }

/// Kronecker symbol (a/b), extending the Jacobi symbol to every integer b.
///
/// (a/-1) = sign(a) for a != 0, (a/2) = 0, 1, -1 as a is even, +-1 mod 8, +-3 mod 8,
/// and (a/0) = [|a| = 1].
inline int kronecker(std::int64_t a, std::int64_t b)
{
    if (b == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    if ((a % 2 == 0) && (b % 2 == 0))
        return 0;
    int result = 1;
    // Work with a wider signed type so that negating INT64_MIN is safe.
    i128 A = a, B = b;
    int v = 0;
    while (B % 2 == 0) {
        B /= 2;
        ++v;
    }
    if (v % 2) {
        const int r = int(((A % 8) + 8) % 8);
        if (r == 3 || r == 5)
            result = -result;
    }
    if (B < 0) {
        B = -B;
        if (A < 0)
            result = -result;
    }
    // Now B odd positive: Jacobi symbol (A/B).
    A %= B;
    if (A < 0)
        A += B;
    while (A != 0) {
        while (A % 2 == 0) {
            A /= 2;
            const int r = int(B % 8);
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(A, B);
        if (A % 4 == 3 && B % 4 == 3)
            result = -result;
        A %= B;
    }
    return B == 1 ? result : 0;
}

/// Jacobi symbol (a/b) for odd positive b.
inline int jacobi(std::int64_t a, std::int64_t b)
{
    if (b <= 0 || b % 2 == 0)
        throw domain_error("jacobi: modulus must be odd and positive, got " + std::to_string(b));
    return kronecker(a, b);
}

/// Legendre symbol for an odd prime p.
inline int legendre(std::int64_t a, std::uint64_t p) { return kronecker(a, std::int64_t(p)); }

namespace detail {

inline int unit_eps(i128 u) // (u-1)/2 mod 2 for odd u
{
    i128 r = ((u % 4) + 4) % 4;
    return r == 3 ? 1 : 0;
}

inline int unit_omega(i128 u) // (u^2-1)/8 mod 2 for odd u
{
    i128 r = ((u % 8) + 8) % 8;
    return (r == 3 || r == 5) ? 1 : 0;
}

} // namespace detail

/// Quadratic Hilbert symbol (a,b)_v over Q_v by the closed-form local formulas.
inline int hilbert_symbol(i128 a, i128 b, place v)
{
    if (a == 0 || b == 0)
        throw domain_error("hilbert_symbol: arguments must be nonzero");
    if (v.is_infinite())
        return (a < 0 && b < 0) ? -1 : 1;
    const u128 p = v.p;
    int alpha = 0, beta = 0;
    while (a % i128(p) == 0) {
        a /= i128(p);
        ++alpha;
    }
    while (b % i128(p) == 0) {
        b /= i128(p);
        ++beta;
    }
    if (p == 2) {
        int e = detail::unit_eps(a) * detail::unit_eps(b) + alpha * detail::unit_omega(b) + beta * detail::unit_omega(a);
        return (e % 2) ? -1 : 1;
    }
    // Legendre symbols of the units, reduced into int64 range first.
    auto leg = [&](i128 u) {
        i128 r = u % i128(p);
        if (r < 0)
            r += i128(p);
        return kronecker(std::int64_t(r), std::int64_t(p));
    };
    int s = 1;
    if ((alpha * beta) % 2 && (p % 4 == 3))
        s = -s;
    if (beta % 2)
        s *= leg(a);
    if (alpha % 2)
        s *= leg(b);
    return s;
}

template <std::integral A, std::integral B> int hilbert_symbol(A a, B b, place v)
{
    return hilbert_symbol(i128(a), i128(b), v);
}

/// Whether x (nonzero) is a square in Q_v.
inline bool is_local_square(i128 x, place v)
{
    if (x == 0)
        throw domain_error("is_local_square: zero");
    if (v.is_infinite())
        return x > 0;
    const i128 p = i128(v.p);
    int e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    if (e % 2)
        return false;
    if (v.p == 2)
        return ((x % 8) + 8) % 8 == 1;
    i128 r = x % p;
    if (r < 0)
        r += p;
    return kronecker(std::int64_t(r), std::int64_t(p)) == 1;
}

} // namespace fourrank
