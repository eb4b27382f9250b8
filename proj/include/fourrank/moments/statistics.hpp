#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "fourrank/arith/sieve.hpp"
#include "fourrank/error.hpp"
#include "fourrank/moments/table.hpp"
#include "fourrank/parallel.hpp"
#include "fourrank/quadfield.hpp"
#include "fourrank/selmer.hpp"

namespace fourrank {

/// Largest X for the batch reports (set sizes, Turan, Erdos-Kac).
inline constexpr std::uint64_t max_report_bound = 100'000'000;

inline constexpr std::size_t report_chunk = 4096;

/// 2 / zeta(2) = 12 / pi^2.
inline double two_over_zeta2() { return 12.0 / (M_PI * M_PI); }

struct moment_row {
    std::uint64_t X = 0;
    std::uint64_t sum_x = 0;
    std::uint64_t sum_y = 0;
    std::uint64_t sqfree_count = 0;
    std::uint64_t trivial_x = 0;
    std::uint64_t trivial_y = 0;
    std::uint64_t trivial_both = 0;

    double frac_trivial_x() const { return double(trivial_x) / double(sqfree_count); }
    double frac_trivial_y() const { return double(trivial_y) / double(sqfree_count); }
    double frac_trivial_both() const { return double(trivial_both) / double(sqfree_count); }
    double reference() const { return two_over_zeta2() * double(X); }
};

namespace detail {

inline void check_report_bound(std::uint64_t X, std::uint64_t min_x, const char* who)
{
    if (X < min_x)
        throw domain_error(std::string(who) + ": X=" + std::to_string(X) + " is below the minimum " +
                           std::to_string(min_x));
    if (X > max_report_bound)
        throw resource_error(std::string(who) + ": X=" + std::to_string(X) + " exceeds the configured bound " +
                             std::to_string(max_report_bound));
}

} // namespace detail

/// Sum of |X~_n| and |Y~_n| over squarefree 1 <= |n| <= X, the squarefree count and how many
/// n have trivial candidate sets; one row per X in X_list (n = 1 and n = z included).
inline std::vector<moment_row> moment_report(const quadratic_field& field, std::vector<std::uint64_t> X_list,
                                             unsigned threads = 1)
{
    if (X_list.empty())
        throw domain_error("moment_report: empty X list");
    std::sort(X_list.begin(), X_list.end());
    X_list.erase(std::unique(X_list.begin(), X_list.end()), X_list.end());
    for (auto X : X_list)
        detail::check_report_bound(X, 100, "moment_report");
    const squarefree_table table(X_list.back());

    const std::size_t nchunks = (table.size() + report_chunk - 1) / report_chunk;
    // per chunk, per X bucket (the smallest X >= |n|)
    std::vector<std::vector<moment_row>> partial(nchunks, std::vector<moment_row>(X_list.size()));
    parallel_chunks(table.size(), report_chunk, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        factored_int nf;
        auto& rows = partial[c];
        for (std::size_t i = b; i < e; ++i) {
            const auto m = table.value(i);
            auto& r = rows[std::size_t(std::lower_bound(X_list.begin(), X_list.end(), m) - X_list.begin())];
            for (int sign : {1, -1}) {
                table.load(i, sign, nf);
                const auto cx = candidate_count(field, nf, selmer_variant::x);
                const auto cy = candidate_count(field, nf, selmer_variant::y);
                r.sum_x += cx;
                r.sum_y += cy;
                r.sqfree_count += 1;
                r.trivial_x += cx == 1;
                r.trivial_y += cy == 1;
                r.trivial_both += cx == 1 && cy == 1;
            }
        }
    });
    std::vector<moment_row> out(X_list.size());
    moment_row acc;
    for (std::size_t k = 0; k < X_list.size(); ++k) {
        for (const auto& rows : partial) {
            const auto& r = rows[k];
            acc.sum_x += r.sum_x;
            acc.sum_y += r.sum_y;
            acc.sqfree_count += r.sqfree_count;
            acc.trivial_x += r.trivial_x;
            acc.trivial_y += r.trivial_y;
            acc.trivial_both += r.trivial_both;
        }
        acc.X = X_list[k];
        out[k] = acc;
    }
    return out;
}

struct turan_result {
    std::uint64_t X = 0;
    /// (1/2X) sum over 1 <= |n| <= X of omega_inert(n), and of its square.
    double first = 0;
    double second = 0;
    double loglog = 0;

    double variance() const { return second - first * first; }
    double reference_first() const { return loglog / 2; }
    double reference_second() const { return reference_first() * reference_first(); }
};

/// Mean and second moment of omega_inert(n) over all integers 1 <= |n| <= X.
inline turan_result turan_report(const quadratic_field& field, std::uint64_t X)
{
    detail::check_report_bound(X, 100, "turan_report");
    std::vector<std::uint8_t> count(X + 1, 0);
    for (auto p : primes_up_to(X))
        if (field.splitting(p) == splitting_type::inert)
            for (std::uint64_t m = p; m <= X; m += p)
                ++count[m];
    std::uint64_t s1 = 0, s2 = 0;
    for (std::uint64_t m = 1; m <= X; ++m) {
        s1 += count[m];
        s2 += std::uint64_t(count[m]) * count[m];
    }
    turan_result r;
    r.X = X;
    r.first = double(s1) / double(X);
    r.second = double(s2) / double(X);
    r.loglog = std::log(std::log(double(X)));
    return r;
}

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

struct ek_point {
    double z;
    double F;
    double Phi;
};

struct ek_result {
    std::uint64_t X = 0;
    double A = 0;
    double B = 0;
    /// squarefree n with 1 <= |n| <= X, excluding the degenerate n = 1 and n = z
    std::uint64_t count = 0;
    std::map<int, std::uint64_t> histogram;
    std::vector<ek_point> grid;
    /// sup over all real z of |F(z) - Phi(z)|
    double sup_distance = 0;
};

/// z = -3.0, -2.9, ..., 3.0
inline std::vector<double> default_z_grid()
{
    std::vector<double> g;
    for (int i = -30; i <= 30; ++i)
        g.push_back(double(i) / 10.0);
    return g;
}

/// Empirical distribution of (predicted_rk4(n) - A(X)) / B(X) over squarefree |n| <= X,
/// with A(X) = loglog X / 2 and B(X) = sqrt(A(X)), against the standard normal.
inline ek_result erdos_kac_report(const quadratic_field& field, std::uint64_t X,
                                  const std::vector<double>& z_grid = default_z_grid(), unsigned threads = 1)
{
    detail::check_report_bound(X, 1000, "erdos_kac_report");
    if (!field.class_group())
        throw state_error("erdos_kac_report: class group of " + field.name() + " not attached");
    const squarefree_table table(X);
    const std::size_t nchunks = (table.size() + report_chunk - 1) / report_chunk;
    std::vector<std::map<int, std::uint64_t>> partial(nchunks);
    parallel_chunks(table.size(), report_chunk, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        factored_int nf;
        for (std::size_t i = b; i < e; ++i)
            for (int sign : {1, -1}) {
                table.load(i, sign, nf);
                if (nf.value == 1 || nf.value == field.z())
                    continue;
                ++partial[c][predicted_rk4(field, nf)];
            }
    });
    ek_result r;
    r.X = X;
    r.A = std::log(std::log(double(X))) / 2;
    r.B = std::sqrt(r.A);
    for (const auto& h : partial)
        for (const auto& [k, v] : h) {
            r.histogram[k] += v;
            r.count += v;
        }
    if (r.count == 0)
        throw domain_error("erdos_kac_report: no admissible n up to X");
    const double N = double(r.count);
    // F(z) = #{v : v - A < z B} / N
    auto F = [&](double z) {
        std::uint64_t below = 0;
        for (const auto& [k, v] : r.histogram)
            if (double(k) - r.A < z * r.B)
                below += v;
        return double(below) / N;
    };
    for (double z : z_grid)
        r.grid.push_back({z, F(z), normal_cdf(z)});
    // F jumps only at t_k = (k - A)/B; the sup is attained at one side of a jump.
    std::uint64_t below = 0;
    for (const auto& [k, v] : r.histogram) {
        const double phi = normal_cdf((double(k) - r.A) / r.B);
        r.sup_distance = std::max(r.sup_distance, std::abs(phi - double(below) / N));
        below += v;
        r.sup_distance = std::max(r.sup_distance, std::abs(phi - double(below) / N));
    }
    return r;
}

} // namespace fourrank
