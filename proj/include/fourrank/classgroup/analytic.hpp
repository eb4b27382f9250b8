#pragma once

#include <cmath>
#include <cstdint>

#include "fourrank/arith/sieve.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/error.hpp"
#include "fourrank/quadfield.hpp"

namespace fourrank {

/// Discriminants up to this size use the exact finite character sums; larger ones an
/// Euler product for L(1, chi) truncated at euler_product_limit.
inline constexpr std::int64_t exact_analytic_limit = 20'000'000;
inline constexpr std::uint64_t euler_product_limit = 2'000'000;

inline double l_one_euler_product(std::int64_t disc)
{
    double l = 1.0;
    for (auto p : primes_up_to(euler_product_limit)) {
        const int c = kronecker(disc, std::int64_t(p));
        l *= 1.0 / (1.0 - double(c) / double(p));
    }
    return l;
}

/// Class number of the quadratic field of fundamental discriminant disc from the analytic
/// class number formula. Exact (up to rounding) for |disc| <= exact_analytic_limit,
/// an estimate beyond.
inline double analytic_class_number(std::int64_t disc)
{
    if (disc == 0 || disc == 1)
        throw domain_error("analytic_class_number: degenerate discriminant");
    const std::int64_t a_disc = disc < 0 ? -disc : disc;
    if (disc < 0) {
        const double w = disc == -3 ? 6.0 : (disc == -4 ? 4.0 : 2.0);
        if (a_disc <= exact_analytic_limit) {
            // h = -(w / 2|D|) sum_{a=1}^{|D|} chi(a) a
            long double s = 0;
            for (std::int64_t a = 1; a < a_disc; ++a)
                s += (long double)(kronecker(disc, a)) * (long double)a;
            return double(-s * w / (2.0L * (long double)a_disc));
        }
        return w * std::sqrt(double(a_disc)) / (2.0 * M_PI) * l_one_euler_product(disc);
    }
    const double reg = compute_fundamental_unit(disc).log();
    if (disc <= exact_analytic_limit) {
        // h R = -(1/2) sum_{a=1}^{D-1} chi(a) log sin(pi a / D)
        long double s = 0;
        for (std::int64_t a = 1; a < disc; ++a) {
            const int c = kronecker(disc, a);
            if (c != 0)
                s += c * std::log(std::sin(M_PI * (long double)a / (long double)disc));
        }
        return double(-s / (2.0L * reg));
    }
    return std::sqrt(double(disc)) * l_one_euler_product(disc) / (2.0 * reg);
}

} // namespace fourrank
