#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "fourrank/arith/factor.hpp"
#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

/// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
struct binary_form {
    std::int64_t a, b, c;

    std::int64_t disc() const { return b * b - 4 * a * c; }
    friend auto operator<=>(const binary_form&, const binary_form&) = default;
};

inline bool is_fundamental_discriminant(std::int64_t d)
{
    if (d == 0 || d == 1)
        return false;
    const std::int64_t r = ((d % 4) + 4) % 4;
    if (r == 1)
        return is_squarefree(d);
    if (r != 0)
        return false;
    const std::int64_t q = d / 4;
    const std::int64_t r4 = ((q % 4) + 4) % 4;
    return (r4 == 2 || r4 == 3) && is_squarefree(q);
}

inline binary_form reduce(binary_form f)
{
    for (;;) {
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.b > f.a || f.b <= -f.a) {
            // b -> b + 2ka in (-a, a]
            const std::int64_t two_a = 2 * f.a;
            std::int64_t k = (f.a - f.b) / two_a;
            if ((f.a - f.b) % two_a < 0)
                --k;
            const std::int64_t nb = f.b + two_a * k;
            f.c = (nb * nb - f.disc()) / (4 * f.a);
            f.b = nb;
            continue;
        }
        return f;
    }
}

/// Dirichlet composition of primitive forms of the same discriminant, then reduction.
inline binary_form compose(const binary_form& f, const binary_form& g)
{
    const std::int64_t D = f.disc();
    const std::int64_t a1 = f.a, a2 = g.a, b1 = f.b, b2 = g.b;
    const std::int64_t beta = (b1 + b2) / 2;
    // e = gcd(a1, a2, beta) with Bezout coefficients
    auto egcd = [](std::int64_t x, std::int64_t y, std::int64_t& u, std::int64_t& v) {
        std::int64_t r0 = x, r1 = y, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
            std::tie(u0, u1) = std::make_tuple(u1, u0 - q * u1);
            std::tie(v0, v1) = std::make_tuple(v1, v0 - q * v1);
        }
        if (r0 < 0) {
            r0 = -r0;
            u0 = -u0;
            v0 = -v0;
        }
        u = u0;
        v = v0;
        return r0;
    };
    std::int64_t u1, v1;
    const std::int64_t d1 = egcd(a1, a2, u1, v1);
    std::int64_t u2, v2;
    const std::int64_t e = egcd(d1, beta, u2, v2);
    // mu a1 + nu a2 + w beta = e
    const i128 mu = i128(u2) * u1, nu = i128(u2) * v1, w = v2;
    const std::int64_t A = a1 / e * (a2 / e);
    const i128 num = mu * a1 * b2 + nu * a2 * b1 + w * ((i128(b1) * b2 + D) / 2);
    i128 B = num / e;
    const i128 twoA = 2 * i128(A);
    B %= twoA;
    if (B < 0)
        B += twoA;
    const std::int64_t Bi = std::int64_t(B);
    const std::int64_t C = std::int64_t((i128(Bi) * Bi - D) / (4 * i128(A)));
    return reduce({A, Bi, C});
}

/// All reduced primitive forms of discriminant D < 0.
inline std::vector<binary_form> reduced_forms(std::int64_t D)
{
    std::vector<binary_form> out;
    const std::int64_t aD = -D;
    for (std::int64_t a = 1; 3 * a * a <= aD; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            const std::int64_t c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                continue;
            out.push_back({a, b, c});
        }
    return out;
}

/// Class group of the imaginary quadratic field of fundamental discriminant D via forms.
inline abelian_group class_group_forms(std::int64_t D)
{
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw domain_error("class_group_forms: " + std::to_string(D) + " is not a negative fundamental discriminant");
    if (D < -10'000'000)
        throw domain_error("class_group_forms: |D| beyond 10^7");
    const auto forms = reduced_forms(D);
    const std::int64_t h = std::int64_t(forms.size());
    const binary_form id = reduce({1, D % 2 == 0 ? 0 : 1, D % 2 == 0 ? -D / 4 : (1 - D) / 4});
    // orders of all elements; the group structure follows from counting elements
    // of order dividing p^k for each prime p | h.
    std::map<binary_form, std::int64_t> order;
    for (const auto& f : forms) {
        binary_form g = f;
        std::int64_t k = 1;
        while (g != id) {
            g = compose(g, f);
            ++k;
            if (k > h)
                throw domain_error("class_group_forms: composition did not close");
        }
        order[f] = k;
    }
    // For each p^e || h: n_k = #{x : x^{p^k} = 1} = p^{sum_i min(k, e_i)}; recover e_i.
    std::vector<std::uint64_t> cyclic;
    auto hf = factorize(h);
    for (const auto& pp : hf.factors) {
        const std::uint64_t p = pp.prime;
        std::vector<int> logs; // log_p n_k for k = 0..e
        for (int k = 0; k <= pp.exponent; ++k) {
            std::int64_t pk = 1;
            for (int i = 0; i < k; ++i)
                pk *= std::int64_t(p);
            std::int64_t cnt = 0;
            for (const auto& [f, o] : order)
                if (pk % o == 0)
                    ++cnt;
            int l = 0;
            while (cnt > 1) {
                cnt /= std::int64_t(p);
                ++l;
            }
            logs.push_back(l);
        }
        // number of cyclic factors of exponent >= k is logs[k] - logs[k-1]
        for (int k = 1; k <= pp.exponent; ++k) {
            const int ge_k = logs[k] - logs[k - 1];
            const int ge_k1 = k < pp.exponent ? logs[k + 1] - logs[k] : 0;
            std::uint64_t pk = 1;
            for (int i = 0; i < k; ++i)
                pk *= p;
            for (int c = 0; c < ge_k - ge_k1; ++c)
                cyclic.push_back(pk);
        }
    }
    return abelian_group::from_cyclic_orders(cyclic);
}

} // namespace fourrank
