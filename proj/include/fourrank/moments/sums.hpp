#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fourrank/arith/factor.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/error.hpp"
#include "fourrank/moments/table.hpp"
#include "fourrank/quadfield.hpp"
#include "fourrank/selmer.hpp"

namespace fourrank {

using rational = boost::multiprecision::cpp_rational;

/// Largest X accepted by the term-by-term sums.
inline constexpr std::uint64_t max_sum_bound = 100'000;

/// Exact sum of terms +-1 / 2^e, kept as one integer numerator per exponent.
class dyadic_sum {
public:
    void add(int value, int exp2)
    {
        if (exp2 < 0)
            throw domain_error("dyadic_sum: negative exponent");
        if (std::size_t(exp2) >= num_.size())
            num_.resize(std::size_t(exp2) + 1, 0);
        num_[std::size_t(exp2)] += value;
    }

    void merge(const dyadic_sum& other)
    {
        if (other.num_.size() > num_.size())
            num_.resize(other.num_.size(), 0);
        for (std::size_t i = 0; i < other.num_.size(); ++i)
            num_[i] += other.num_[i];
    }

    rational value() const
    {
        rational s = 0;
        for (std::size_t e = 0; e < num_.size(); ++e)
            if (num_[e] != 0)
                s += rational(bigint(num_[e]), bigint(1) << e);
        return s;
    }

private:
    std::vector<std::int64_t> num_;
};

namespace detail {

/// Jacobi symbol (top / b) for odd b > 0 and top of any size that fits i128.
inline int jacobi_wide(i128 top, std::int64_t b)
{
    i128 r = top % b;
    if (r < 0)
        r += b;
    return kronecker(std::int64_t(r), b);
}

inline std::int64_t subset_product(const std::vector<std::uint64_t>& ps, std::uint64_t mask)
{
    std::int64_t v = 1;
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (mask >> i & 1)
            v *= std::int64_t(ps[i]);
    return v;
}

inline void check_sum_bound(std::uint64_t X)
{
    if (X < 1)
        throw domain_error("moment sums: X must be >= 1");
    if (X > max_sum_bound)
        throw resource_error("moment sums: X=" + std::to_string(X) + " exceeds the term-by-term bound " +
                             std::to_string(max_sum_bound));
}

} // namespace detail

/// One term (n, d, a, b, c) of the expanded indicator sum; its contribution is value / 2^exp2.
struct direct_term {
    std::int64_t n, d, a, b, c;
    int exp2;
    int value;
};

/// Calls f(direct_term) for every term of the expanded sum over squarefree |n| <= X,
/// squarefree d | 2 Delta n and the divisors a, b | d/(d, 2 Delta), c | n/(n, 2 d Delta).
template <class F> void for_each_direct_term(const quadratic_field& field, std::uint64_t X, selmer_variant variant, F&& f)
{
    detail::check_sum_bound(X);
    const squarefree_table table(X);
    const std::int64_t two_delta = 2 * field.disc();
    const int pm = variant == selmer_variant::x ? 1 : -1;
    factored_int nf;
    for (std::size_t i = 0; i < table.size(); ++i)
        for (int sign : {1, -1}) {
            table.load(i, sign, nf);
            const std::int64_t n = nf.value;
            const auto primes = detail::primes_of_2_delta_n(field, nf);
            detail::for_each_divisor_of_2_delta_n(primes, [&](std::int64_t d, std::uint64_t mask) {
                std::vector<std::uint64_t> A, C;
                for (std::size_t k = 0; k < primes.size(); ++k) {
                    const std::int64_t p = std::int64_t(primes[k]);
                    if (two_delta % p == 0)
                        continue;
                    if (mask >> k & 1)
                        A.push_back(primes[k]);
                    else if (n % p == 0)
                        C.push_back(primes[k]);
                }
                const std::int64_t g = std::gcd(d, n);
                const i128 twisted = i128(pm) * (d / g) * (n / g);
                const int exp2 = 2 * int(A.size()) + int(C.size());
                for (std::uint64_t ma = 0; ma < (std::uint64_t(1) << A.size()); ++ma) {
                    const std::int64_t a = detail::subset_product(A, ma);
                    const int sa = kronecker(field.z(), a);
                    for (std::uint64_t mb = 0; mb < (std::uint64_t(1) << A.size()); ++mb) {
                        const std::int64_t b = detail::subset_product(A, mb);
                        const int sb = detail::jacobi_wide(twisted, b);
                        for (std::uint64_t mc = 0; mc < (std::uint64_t(1) << C.size()); ++mc) {
                            const std::int64_t c = detail::subset_product(C, mc);
                            f(direct_term{n, d, a, b, c, exp2, sa * sb * detail::jacobi_wide(d, c)});
                        }
                    }
                }
                return true;
            });
        }
}

/// Sum over squarefree |n| <= X of the indicator-product upper bound for |X~_n| (variant x)
/// or |Y~_n| (variant y), from its expansion in the divisors a, b, c.
inline rational xn_sum_direct(const quadratic_field& field, std::uint64_t X, selmer_variant variant)
{
    dyadic_sum s;
    for_each_direct_term(field, X, variant, [&](const direct_term& t) { s.add(t.value, t.exp2); });
    return s.value();
}

/// Pairwise coprime squarefree variables y_1..y_6 (odd, positive) and z_1..z_4
/// (z_1 > 0, product rad(2 Delta)) indexing one term of the reparametrized sum.
struct sum_term {
    std::array<std::int64_t, 6> y{1, 1, 1, 1, 1, 1};
    std::array<std::int64_t, 4> z{1, 1, 1, 1};

    std::int64_t a() const { return y[0] * y[2]; }
    std::int64_t b() const { return y[1] * y[2]; }
    std::int64_t c() const { return y[4]; }
    std::int64_t d() const { return y[0] * y[1] * y[2] * y[3] * z[0] * z[1]; }
    std::int64_t n() const { return y[0] * y[1] * y[2] * y[3] * y[4] * y[5] * z[0] * z[2]; }

    /// Coprimality, squarefreeness, signs and the product rule for the z's.
    bool valid(std::int64_t rad_two_delta) const
    {
        std::int64_t zprod = 1;
        for (auto v : z)
            zprod *= v;
        if (zprod != rad_two_delta || z[0] <= 0)
            return false;
        std::vector<std::int64_t> all(y.begin(), y.end());
        all.insert(all.end(), z.begin(), z.end());
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i] == 0 || !is_squarefree(all[i]))
                return false;
            if (i < 6 && (all[i] < 0 || all[i] % 2 == 0))
                return false;
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (std::gcd(all[i], all[j]) != 1)
                    return false;
        }
        return true;
    }
};

/// Signed radical of 2 Delta (negative when Delta < 0).
inline std::int64_t rad_two_delta(const quadratic_field& field)
{
    return signed_radical(factorize(2 * field.disc()));
}

/// Calls f(sum_term, value, exp2) for every term of the reparametrized sum with
/// prod(y) <= X / (z_1 |z_3|); the term contributes value / 2^exp2.
template <class F> void for_each_sum_term(const quadratic_field& field, std::uint64_t X, selmer_variant variant, F&& f)
{
    detail::check_sum_bound(X);
    const auto rad_f = factorize(2 * field.disc());
    std::vector<std::uint64_t> Q;
    for (const auto& pp : rad_f.factors)
        Q.push_back(pp.prime);
    const int sgn_delta = field.disc() < 0 ? -1 : 1;
    const int pm = variant == selmer_variant::x ? 1 : -1;
    const squarefree_table table(X);

    std::uint64_t zcount = 1;
    for (std::size_t i = 0; i < Q.size(); ++i)
        zcount *= 4;
    for (std::uint64_t zmask = 0; zmask < zcount; ++zmask)
        for (int sd : {1, -1})
            for (int sn : {1, -1}) {
                sum_term t;
                t.z = {1, sd, sn, sd * sn * sgn_delta};
                std::uint64_t code = zmask;
                for (std::size_t i = 0; i < Q.size(); ++i, code /= 4)
                    t.z[code % 4] *= std::int64_t(Q[i]);
                const std::int64_t z3abs = t.z[2] < 0 ? -t.z[2] : t.z[2];
                const std::uint64_t x = X / std::uint64_t(t.z[0] * z3abs);
                factored_int mf;
                for (std::size_t i = 0; i < table.size() && table.value(i) <= x; ++i) {
                    table.load(i, 1, mf);
                    bool ok = true;
                    for (const auto& pp : mf.factors)
                        if (rad_f.divisible_by(pp.prime))
                            ok = false;
                    if (!ok)
                        continue;
                    const std::size_t w = mf.factors.size();
                    std::uint64_t slots = 1;
                    for (std::size_t k = 0; k < w; ++k)
                        slots *= 6;
                    for (std::uint64_t s = 0; s < slots; ++s) {
                        t.y = {1, 1, 1, 1, 1, 1};
                        std::uint64_t sc = s;
                        int w1234 = 0, w56 = 0;
                        for (std::size_t k = 0; k < w; ++k, sc /= 6) {
                            t.y[sc % 6] *= std::int64_t(mf.factors[k].prime);
                            (sc % 6 < 4 ? w1234 : w56) += 1;
                        }
                        const auto& y = t.y;
                        const int v1 = kronecker(field.z(), y[0] * y[2]);
                        const int v2 = detail::jacobi_wide(i128(pm) * y[4] * y[5] * t.z[1] * t.z[2], y[1] * y[2]);
                        const int v3 = detail::jacobi_wide(i128(y[0]) * y[1] * y[2] * y[3] * t.z[0] * t.z[1], y[4]);
                        f(static_cast<const sum_term&>(t), v1 * v2 * v3, 2 * w1234 + w56);
                    }
                }
            }
}

/// The same sum as xn_sum_direct, evaluated over the coprime variables y, z.
inline rational xn_sum_reparam(const quadratic_field& field, std::uint64_t X, selmer_variant variant)
{
    dyadic_sum s;
    for_each_sum_term(field, X, variant, [&](const sum_term&, int value, int exp2) { s.add(value, exp2); });
    return s.value();
}

} // namespace fourrank
