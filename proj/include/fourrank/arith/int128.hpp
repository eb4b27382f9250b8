#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace fourrank {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v)
{
    if (v == 0)
        return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(0) - u128(v) : u128(v);
    std::string s;
    while (u) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg)
        s.push_back('-');
    return {s.rbegin(), s.rend()};
}

inline i128 parse_i128(const std::string& s)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        neg = s[i++] == '-';
    if (i == s.size())
        throw std::invalid_argument("parse_i128: empty number");
    u128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("parse_i128: bad digit in '" + s + "'");
        v = v * 10 + u128(s[i] - '0');
    }
    return neg ? -i128(v) : i128(v);
}

inline u128 abs_u128(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

/// (a*b) mod m for 64-bit operands.
inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return std::uint64_t(u128(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

/// (a*b) mod m for 128-bit operands, by double-and-add (no 256-bit product needed).
inline u128 mulmod128(u128 a, u128 b, u128 m)
{
    if ((a >> 64) == 0 && (b >> 64) == 0 && (m >> 64) == 0)
        return (a * b) % m;
    a %= m;
    b %= m;
    u128 r = 0;
    while (b) {
        if (b & 1) {
            r = (r >= m - a) ? r - (m - a) : r + a;
        }
        a = (a >= m - a) ? a - (m - a) : a + a;
        b >>= 1;
    }
    return r;
}

inline u128 powmod128(u128 b, u128 e, u128 m)
{
    u128 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod128(r, b, m);
        b = mulmod128(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t isqrt64(std::uint64_t n)
{
    std::uint64_t r = 0;
    for (int bit = 31; bit >= 0; --bit) {
        std::uint64_t c = r | (std::uint64_t(1) << bit);
        if (u128(c) * c <= n)
            r = c;
    }
    return r;
}

inline u128 isqrt128(u128 n)
{
    u128 r = 0;
    for (int bit = 63; bit >= 0; --bit) {
        u128 c = r | (u128(1) << bit);
        if (c <= n / c)
            r = c;
    }
    return r;
}

} // namespace fourrank
