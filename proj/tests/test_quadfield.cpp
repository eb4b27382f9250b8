#include <cstdint>

#include <gtest/gtest.h>

#include "fourrank/arith/sieve.hpp"
#include "fourrank/classgroup/order.hpp"
#include "fourrank/quadfield.hpp"
#include "support.hpp"

using namespace fourrank;

namespace {

/// Smallest (a, b) with b > 0 and a^2 - disc b^2 = +-4, by increasing b.
std::pair<std::int64_t, std::int64_t> brute_unit(std::int64_t disc)
{
    for (std::int64_t b = 1;; ++b)
        for (std::int64_t t : {-4, 4}) {
            const std::int64_t s = disc * b * b + t;
            const auto a = std::int64_t(isqrt64(std::uint64_t(s)));
            if (a > 0 && a * a == s)
                return {a, b};
        }
}

} // namespace

TEST(QuadraticField, Discriminants)
{
    EXPECT_EQ(quadratic_field(-1).disc(), -4);
    EXPECT_EQ(quadratic_field(5).disc(), 5);
    EXPECT_EQ(quadratic_field(-5).disc(), -20);
    EXPECT_EQ(quadratic_field(2).disc(), 8);
    EXPECT_EQ(quadratic_field(-3).disc(), -3);
    EXPECT_FALSE(quadratic_field(-1).is_real());
    EXPECT_TRUE(quadratic_field(5).is_real());
    EXPECT_EQ(quadratic_field(-5).omega_disc(), 2);
}

TEST(QuadraticField, RejectsBadRadicands)
{
    EXPECT_THROW(quadratic_field(0), domain_error);
    EXPECT_THROW(quadratic_field(1), domain_error);
    EXPECT_THROW(quadratic_field(4), domain_error);
    EXPECT_THROW(quadratic_field(-12), domain_error);
}

TEST(QuadraticField, DiscriminantInvariants)
{
    for (std::int64_t z = -3000; z <= 3000; ++z) {
        if (z == 0 || z == 1 || !is_squarefree(z))
            continue;
        const quadratic_field K(z);
        const auto D = K.disc();
        ASSERT_TRUE(((D % 4) + 4) % 4 <= 1) << z;
        ASSERT_TRUE(is_squarefree(D) || (D % 4 == 0 && is_squarefree(D / 4))) << z;
    }
}

TEST(QuadraticField, GoldenRatioUnit)
{
    const quadratic_field K(5);
    ASSERT_TRUE(K.unit());
    EXPECT_EQ(K.unit()->a, 1);
    EXPECT_EQ(K.unit()->b, 1);
    EXPECT_EQ(K.unit()->norm, -1);
    EXPECT_FALSE(quadratic_field(-1).unit());
}

TEST(QuadraticField, UnitsMatchBruteForce)
{
    for (std::int64_t z = 2; z <= 150; ++z) {
        if (!is_squarefree(z))
            continue;
        const quadratic_field K(z);
        const auto [a, b] = brute_unit(K.disc());
        const auto& u = *K.unit();
        ASSERT_EQ(u.a, a) << z;
        ASSERT_EQ(u.b, b) << z;
        ASSERT_EQ(u.norm, a * a - K.disc() * b * b == 4 ? 1 : -1) << z;
        ASSERT_GT(u.log(), 0) << z;
    }
}

TEST(QuadraticField, LargeRegulator)
{
    // 94 has a fundamental unit with a 2143295 + 221064 sqrt(94)
    const quadratic_field K(94);
    EXPECT_EQ(K.unit()->a, 2 * 2143295);
    EXPECT_EQ(K.unit()->b, 221064);
    EXPECT_EQ(K.unit()->norm, 1);
    EXPECT_NEAR(K.unit()->log(), std::log(2143295.0 + 221064.0 * std::sqrt(94.0)), 1e-9);
}

TEST(QuadraticField, Splitting)
{
    const quadratic_field K(-1);
    EXPECT_EQ(K.splitting(5), splitting_type::split);
    EXPECT_EQ(K.splitting(3), splitting_type::inert);
    EXPECT_EQ(K.splitting(2), splitting_type::ramified);
    for (auto p : primes_up_to(2000))
        if (p > 2)
            ASSERT_EQ(K.splitting(p), p % 4 == 1 ? splitting_type::split : splitting_type::inert) << p;
    const quadratic_field F(5);
    EXPECT_EQ(F.splitting(2), splitting_type::inert);
    EXPECT_EQ(F.splitting(11), splitting_type::split);
    EXPECT_EQ(F.splitting(5), splitting_type::ramified);
}

TEST(QuadraticField, SplittingMatchesPrimeDecomposition)
{
    for (std::int64_t z : {-1, -5, 2, 5, -3, 15, -21}) {
        const quadratic_field K(z);
        const auto O = number_field_order::quadratic(z);
        for (auto p : primes_up_to(1000)) {
            const auto ps = O.primes_above(p);
            splitting_type s = ps.size() == 2 ? splitting_type::split
                               : ps[0].e == 2 ? splitting_type::ramified
                                              : splitting_type::inert;
            ASSERT_EQ(K.splitting(p), s) << z << " " << p;
        }
    }
}

TEST(QuadraticField, OmegaInertAndDeltaN)
{
    const quadratic_field K(-1);
    EXPECT_EQ(disc_of_sqrt(21), 21);
    EXPECT_EQ(omega_inert_disc(K, factorize(21)), 2);
    EXPECT_EQ(disc_of_sqrt(5), 5);
    EXPECT_EQ(omega_inert_disc(K, factorize(5)), 0);
    EXPECT_EQ(disc_of_sqrt(3), 12);
    EXPECT_EQ(disc_of_sqrt(-6), -24);
    EXPECT_THROW(disc_of_sqrt(1), domain_error);
    EXPECT_THROW(disc_of_sqrt(18), domain_error);
    // 2 is inert in Q(sqrt 5), so it counts once 4 | Delta_n
    const quadratic_field F(5);
    EXPECT_EQ(omega_inert_disc(F, factorize(7)), 2);
    EXPECT_EQ(omega_inert_disc(F, factorize(13)), 1);
    EXPECT_EQ(omega_inert_disc(F, factorize(-7)), 1);
}

TEST(QuadraticField, OmegaInertDiscIsOmegaInertOfDeltaN)
{
    proptest::gen g(21);
    for (int i = 0; i < 2000; ++i) {
        const auto z = g.squarefree(500);
        const auto n = g.squarefree(1'000'000);
        const quadratic_field K(z);
        ASSERT_EQ(omega_inert_disc(K, factorize(n)), omega_inert(K, factorize(disc_of_sqrt(n)))) << z << " " << n;
    }
}
