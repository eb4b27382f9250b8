#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <tuple>

#include <gtest/gtest.h>

#include "fourrank/io/reports.hpp"
#include "fourrank/moments.hpp"
#include "support.hpp"

using namespace fourrank;

namespace {

quadratic_field with_class_group(std::int64_t z)
{
    quadratic_field K(z);
    attach_class_group(K);
    return K;
}

std::uint64_t set_size_sum(const quadratic_field& K, std::uint64_t X, selmer_variant v)
{
    std::uint64_t s = 0;
    for (std::int64_t m = 1; m <= std::int64_t(X); ++m)
        if (is_squarefree(m))
            for (auto n : {m, -m})
                s += candidate_count(K, factorize(n), v);
    return s;
}

std::string csv_of(const report::table& t)
{
    std::ostringstream os;
    t.write_csv(os);
    return os.str();
}

} // namespace

TEST(DyadicSum, ExactArithmetic)
{
    dyadic_sum s;
    s.add(1, 1);
    s.add(1, 2);
    s.add(-3, 3);
    s.add(5, 0);
    EXPECT_EQ(s.value(), rational(5) + rational(1, 2) + rational(1, 4) - rational(3, 8));
    dyadic_sum t;
    t.add(3, 3);
    s.merge(t);
    EXPECT_EQ(s.value(), rational(23, 4));
}

TEST(MomentSums, SmallestBound)
{
    // n = +-1: every squarefree d | -8 passes, four values for each sign
    const quadratic_field K(-1);
    EXPECT_EQ(xn_sum_direct(K, 1, selmer_variant::x), rational(8));
    EXPECT_EQ(xn_sum_reparam(K, 1, selmer_variant::x), rational(8));
}

TEST(MomentSums, DirectEqualsSetSizes)
{
    for (std::int64_t z : {-1, 5, -5, 2, -3, 15})
        for (auto v : {selmer_variant::x, selmer_variant::y}) {
            const quadratic_field K(z);
            ASSERT_EQ(xn_sum_direct(K, 200, v), rational(set_size_sum(K, 200, v))) << z << " " << to_string(v);
        }
}

TEST(MomentSums, FrozenValuesAtTwoHundred)
{
    EXPECT_EQ(xn_sum_direct(quadratic_field(-1), 200, selmer_variant::x), rational(754));
    EXPECT_EQ(xn_sum_direct(quadratic_field(5), 200, selmer_variant::x), rational(1296));
    EXPECT_EQ(xn_sum_direct(quadratic_field(-5), 200, selmer_variant::y), rational(1472));
}

TEST(MomentSums, ReparametrizationIsExact)
{
    for (std::int64_t z : {-1, 5, -5, 2, -3, 15, -6})
        for (auto v : {selmer_variant::x, selmer_variant::y}) {
            const quadratic_field K(z);
            for (std::uint64_t X : {10, 57, 200})
                ASSERT_EQ(xn_sum_direct(K, X, v), xn_sum_reparam(K, X, v)) << z << " " << to_string(v) << " X=" << X;
        }
}

TEST(MomentSums, ReparametrizationIsABijection)
{
    for (std::int64_t z : {-1, 5, -5, 10}) {
        const quadratic_field K(z);
        const auto rad = rad_two_delta(K);
        for (auto v : {selmer_variant::x, selmer_variant::y}) {
            std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>, std::pair<int, int>>
                terms;
            for_each_direct_term(K, 150, v, [&](const direct_term& t) {
                terms[{t.n, t.d, t.a, t.b, t.c}] = {t.value * (1 << (12 - t.exp2)), 0};
            });
            for_each_sum_term(K, 150, v, [&](const sum_term& s, int value, int exp2) {
                ASSERT_TRUE(s.valid(rad));
                auto it = terms.find({s.n(), s.d(), s.a(), s.b(), s.c()});
                ASSERT_NE(it, terms.end()) << "n=" << s.n() << " d=" << s.d();
                ASSERT_EQ(it->second.first, value * (1 << (12 - exp2)));
                ++it->second.second;
            });
            for (const auto& [k, hit] : terms)
                ASSERT_EQ(hit.second, 1);
        }
    }
}

TEST(MomentSums, BoundIsEnforced)
{
    EXPECT_THROW(xn_sum_direct(quadratic_field(-1), max_sum_bound + 1, selmer_variant::x), resource_error);
    EXPECT_THROW(xn_sum_reparam(quadratic_field(-1), 0, selmer_variant::x), domain_error);
}

TEST(SquarefreeTable, MatchesSieve)
{
    const squarefree_table t(1000);
    std::vector<std::int64_t> got;
    factored_int f;
    for (std::size_t i = 0; i < t.size(); ++i) {
        t.load(i, -1, f);
        ASSERT_EQ(f.evaluate(), f.value);
        ASSERT_EQ(f.value, -t.value(i));
        got.push_back(t.value(i));
    }
    std::vector<std::int64_t> want;
    positive_squarefree_sieve(1000, [&](const factored_int& g) { want.push_back(g.value); });
    EXPECT_EQ(got, want);
}

TEST(MomentReport, CountsAndFractions)
{
    const quadratic_field K(-1);
    const auto rows = moment_report(K, {1000, 100, 10000});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].X, 100u);
    EXPECT_EQ(rows[0].sqfree_count, 122u);
    EXPECT_EQ(rows[1].sum_x, 3686u);
    EXPECT_EQ(rows[1].sqfree_count, 1216u);
    EXPECT_EQ(rows[2].sqfree_count, 12166u);
    EXPECT_EQ(rows[0].sum_x, set_size_sum(K, 100, selmer_variant::x));
    EXPECT_LE(rows[1].frac_trivial_both(), rows[2].frac_trivial_both());
    for (const auto& r : rows) {
        EXPECT_LE(r.trivial_both, std::min(r.trivial_x, r.trivial_y));
        EXPECT_LE(std::abs(double(r.sqfree_count) - r.reference()), 2 * std::sqrt(double(r.X)));
    }
    EXPECT_THROW(moment_report(K, {99}), domain_error);
    EXPECT_THROW(moment_report(K, {}), domain_error);
    EXPECT_THROW(moment_report(K, {max_report_bound + 1}), resource_error);
}

TEST(MomentReport, SquarefreeCountNearTwoOverZetaTwo)
{
    for (std::uint64_t X : {1000ull, 31623ull, 1000000ull})
        EXPECT_LE(std::abs(double(squarefree_count(X)) - two_over_zeta2() * double(X)), 2 * std::sqrt(double(X))) << X;
}

TEST(MomentReport, IndependentOfThreadCount)
{
    const quadratic_field K(-5);
    const auto a = csv_of(report::moments_table(moment_report(K, {100, 1000, 20000}, 1)));
    const auto b = csv_of(report::moments_table(moment_report(K, {100, 1000, 20000}, 3)));
    EXPECT_EQ(a, b);
}

TEST(Turan, MomentsAtMillion)
{
    const auto r = turan_report(quadratic_field(-1), 1'000'000);
    EXPECT_GE(r.first / r.loglog, 0.35);
    EXPECT_LE(r.first / r.loglog, 0.65);
    EXPECT_LE(r.variance(), 2 * r.first);
    EXPECT_GE(r.variance(), r.first / 2);
}

TEST(Turan, MatchesBruteForce)
{
    const quadratic_field K(-5);
    const auto r = turan_report(K, 5000);
    double s1 = 0, s2 = 0;
    for (std::int64_t n = 1; n <= 5000; ++n) {
        const int w = omega_inert(K, factorize(n));
        s1 += w;
        s2 += w * w;
    }
    EXPECT_DOUBLE_EQ(r.first, s1 / 5000);
    EXPECT_DOUBLE_EQ(r.second, s2 / 5000);
}

TEST(ErdosKac, Distribution)
{
    const auto K = with_class_group(-1);
    const auto ek = erdos_kac_report(K, 20000);
    std::uint64_t total = 0;
    for (const auto& [k, v] : ek.histogram)
        total += v;
    EXPECT_EQ(total, ek.count);
    // every squarefree n except 1 and z = -1
    EXPECT_EQ(ek.count, squarefree_count(20000) - 2);
    EXPECT_EQ(ek.histogram.begin()->first, -1);
    double prev = 0, max_grid = 0;
    for (const auto& p : ek.grid) {
        EXPECT_GE(p.F, prev);
        EXPECT_LE(p.F, 1.0);
        prev = p.F;
        max_grid = std::max(max_grid, std::abs(p.F - p.Phi));
    }
    EXPECT_GE(ek.sup_distance, max_grid);
    EXPECT_DOUBLE_EQ(normal_cdf(0), 0.5);
    EXPECT_NEAR(normal_cdf(1.96), 0.975, 1e-3);
    EXPECT_THROW(erdos_kac_report(K, 999), domain_error);
    EXPECT_THROW(erdos_kac_report(quadratic_field(-1), 20000), state_error);
}

TEST(ErdosKac, IndependentOfThreadCount)
{
    const auto K = with_class_group(-1);
    const auto a = erdos_kac_report(K, 30000, default_z_grid(), 1);
    const auto b = erdos_kac_report(K, 30000, default_z_grid(), 4);
    EXPECT_EQ(csv_of(report::ek_table(a)), csv_of(report::ek_table(b)));
    EXPECT_EQ(a.sup_distance, b.sup_distance);
}

TEST(Campaign, SmallSample)
{
    const auto K = with_class_group(-1);
    const auto rep = verify_campaign(K, {2, 60, true, false});
    ASSERT_FALSE(rep.rows.empty());
    for (const auto& r : rep.rows) {
        EXPECT_EQ(r.n % 2 != 0, true);
        EXPECT_EQ(r.predicted, predicted_rk4(K, r.n));
        EXPECT_TRUE(r.oracle_rk4.has_value());
    }
    auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.n == 21; });
    ASSERT_NE(it, rep.rows.end());
    EXPECT_TRUE(it->generic());
    EXPECT_FALSE(it->agree);
    EXPECT_EQ(rep.below_prediction(), std::vector<std::int64_t>{21});
}

TEST(Campaign, RejectsDegenerateTwistsAndOverrides)
{
    const auto K = with_class_group(-1);
    oracle_override ext;
    ext[21] = {field_spec::parse("-1,21"), 7056, abelian_group::from_cyclic_orders({4}), oracle_status::stable};
    const auto rep = verify_campaign(K, {1, 21, true, true}, {}, 2, &ext);
    EXPECT_NE(std::find(rep.rejected.begin(), rep.rejected.end(), 1), rep.rejected.end());
    EXPECT_NE(std::find(rep.rejected.begin(), rep.rejected.end(), -1), rep.rejected.end());
    auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.n == 21; });
    ASSERT_NE(it, rep.rows.end());
    EXPECT_EQ(*it->oracle_rk4, 1);
    EXPECT_TRUE(it->agree);
    EXPECT_THROW(verify_campaign(quadratic_field(-1), {}), state_error);
}

TEST(Campaign, BudgetFailuresAreRecorded)
{
    const auto K = with_class_group(-1);
    class_group_budget tiny;
    tiny.max_trials = 5;
    const auto rep = verify_campaign(K, {231, 231, true, false}, tiny);
    ASSERT_EQ(rep.rows.size(), 1u);
    EXPECT_EQ(rep.rows[0].oracle_status, "budget");
    EXPECT_FALSE(rep.rows[0].counted());
    EXPECT_FALSE(rep.agreement_rate());
}

TEST(Campaign, IndependentOfThreadCount)
{
    const auto K = with_class_group(-1);
    const auto a = csv_of(report::campaign_table(verify_campaign(K, {2, 80}, {}, 1)));
    const auto b = csv_of(report::campaign_table(verify_campaign(K, {2, 80}, {}, 3)));
    EXPECT_EQ(a, b);
}

TEST(Reports, CsvCells)
{
    report::table t{{"a", "b", "c", "d", "e"}, {{1, true, nullptr, 0.5, "x,y"}}};
    EXPECT_EQ(csv_of(t), "a,b,c,d,e\n1,1,,0.5,\"x,y\"\n");
    EXPECT_EQ(t.to_json().dump(), R"([{"a":1,"b":true,"c":null,"d":0.5,"e":"x,y"}])");
    const auto fields = csv::parse_line("1,\"a \"\"q\"\", b\",,z");
    ASSERT_EQ(fields.size(), 4u);
    EXPECT_EQ(fields[1], "a \"q\", b");
    EXPECT_EQ(fields[2], "");
    EXPECT_THROW(csv::parse_line("\"open"), domain_error);
}

TEST(Parallel, PropagatesErrorsAndReadsEnvironment)
{
    EXPECT_THROW(parallel_chunks(100, 7, 3,
                                 [](std::size_t c, std::size_t, std::size_t) {
                                     if (c == 5)
                                         throw resource_error("boom");
                                 }),
                 resource_error);
    const auto sq = parallel_map<std::size_t>(50, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < 50; ++i)
        ASSERT_EQ(sq[i], i * i);
    ::setenv("FOURRANK_THREADS", "3", 1);
    EXPECT_EQ(default_thread_count(), 3u);
    ::setenv("FOURRANK_THREADS", "zero", 1);
    EXPECT_THROW(default_thread_count(), domain_error);
    ::unsetenv("FOURRANK_THREADS");
    EXPECT_GE(default_thread_count(), 1u);
}
