#include <algorithm>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "fourrank/classgroup/relations.hpp"
#include "fourrank/selmer.hpp"
#include "support.hpp"

using namespace fourrank;

namespace {

quadratic_field with_class_group(std::int64_t z)
{
    quadratic_field K(z);
    attach_class_group(K);
    return K;
}

/// The candidate set straight from the Hilbert-symbol form of the conditions: every odd prime
/// of d is ramified in K or divides n and splits; (d, -n)_p = 1 (X) resp. (d, n)_p = 1 (Y) at
/// split p | n outside Delta; d is a square mod p at inert p | n.
std::vector<std::int64_t> candidates_by_hilbert(const quadratic_field& K, std::int64_t n, selmer_variant v)
{
    const auto nf = factorize(n);
    std::vector<std::uint64_t> primes{2};
    for (const auto& f : K.disc_factored().factors)
        primes.push_back(f.prime);
    for (const auto& f : nf.factors)
        primes.push_back(f.prime);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<std::int64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << primes.size()); ++mask)
        for (int sign : {1, -1}) {
            std::int64_t d = sign;
            for (std::size_t i = 0; i < primes.size(); ++i)
                if (mask >> i & 1)
                    d *= std::int64_t(primes[i]);
            bool ok = true;
            for (auto p : primes) {
                if (p == 2)
                    continue;
                const bool in_delta = K.disc() % std::int64_t(p) == 0;
                const bool in_n = n % std::int64_t(p) == 0;
                const auto s = K.splitting(p);
                if (d % std::int64_t(p) == 0 && !in_delta && !(in_n && s == splitting_type::split))
                    ok = false;
                if (in_n && !in_delta && s == splitting_type::split)
                    ok = ok && hilbert_symbol(d, v == selmer_variant::x ? -n : n, place::prime(p)) == 1;
                if (in_n && !in_delta && s == splitting_type::inert)
                    ok = ok && kronecker(d, std::int64_t(p)) == 1;
            }
            if (ok)
                out.push_back(d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> sorted(std::vector<std::int64_t> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

int omega3(std::int64_t n)
{
    int c = 0;
    for (const auto& f : factorize(n).factors)
        c += f.prime % 4 == 3;
    return c;
}

} // namespace

TEST(LocalCondition, Archimedean)
{
    const auto inf = place::infinity();
    const auto c = local_condition(quadratic_field(-1), 3, inf);
    EXPECT_EQ(c.kind, condition_kind::full);
    EXPECT_EQ(c.dim, 1);
    EXPECT_EQ(local_condition(quadratic_field(5), 7, inf).dim, 0);
    EXPECT_EQ(local_condition(quadratic_field(5), 7, inf).kind, condition_kind::zero);
}

TEST(LocalCondition, FinitePlaces)
{
    const quadratic_field K(-1);
    // 3 is inert in Q(i) and ramified in Q(sqrt 3)
    const auto c3 = local_condition(K, 3, place::prime(3));
    EXPECT_EQ(c3.kind, condition_kind::chi_n_plus_chi_k);
    EXPECT_EQ(c3.dim, 2);
    // 5 splits and does not divide n: n is a square in K_w only if it is one in Q_5
    EXPECT_EQ(local_condition(K, 7, place::prime(5)).kind, condition_kind::chi_n_plus_chi_k);
    EXPECT_EQ(local_condition(K, 7, place::prime(5)).dim, 1);
    // 21 is a square in Q_5, so the condition is the unramified line
    const auto c5 = local_condition(K, 21, place::prime(5));
    EXPECT_EQ(c5.kind, condition_kind::unramified);
    EXPECT_EQ(c5.dim, 1);
    // at 2 (ramified in Q(i)), -1 * 21 = -21 = 3 mod 8 is not a square, nor is 21
    EXPECT_EQ(local_condition(K, 21, place::prime(2)).kind, condition_kind::chi_n_plus_chi_k);
    EXPECT_EQ(local_condition(K, 21, place::prime(2)).dim, 2);
    EXPECT_EQ(local_condition(K, -7, place::prime(2)).kind, condition_kind::unramified_plus_chi_k);
    EXPECT_THROW(local_condition(K, 21, place::prime(9)), domain_error);
}

TEST(LocalCondition, SquaresInCompletions)
{
    const quadratic_field K(-1);
    EXPECT_TRUE(is_square_in_completion(K, -1, 2));
    EXPECT_FALSE(is_square_in_completion(K, 3, 3));
    EXPECT_FALSE(is_square_in_completion(K, -3, 3));
    // every unit is a square in the unramified quadratic extension of Q_3
    EXPECT_TRUE(is_square_in_completion(K, 2, 3));
    EXPECT_FALSE(is_square_in_completion(K, 2, 5));
}

TEST(Candidates, ExamplesOverGaussianField)
{
    const quadratic_field K(-1);
    EXPECT_EQ(xn_candidates(K, 3).to_string(), "{1, -2}");
    EXPECT_EQ(yn_candidates(K, 3).to_string(), "{1, -2}");
    EXPECT_TRUE(xn_candidates(K, 21).is_trivial());
    EXPECT_TRUE(yn_candidates(K, 21).is_trivial());
    EXPECT_EQ(yn_candidates_dual(K, 3).to_string(), "{1, -2}");
}

TEST(Candidates, RejectDegenerateTwists)
{
    const quadratic_field K(-1);
    EXPECT_THROW(xn_candidates(K, -1), domain_error);
    EXPECT_THROW(xn_candidates(K, 1), domain_error);
    EXPECT_THROW(xn_candidates(K, 12), domain_error);
    EXPECT_THROW(xn_candidates(K, 0), domain_error);
    // the counting form used by the sums accepts them
    EXPECT_EQ(candidate_count(K, factorize(1), selmer_variant::x), 4u);
    EXPECT_EQ(candidate_count(K, factorize(-1), selmer_variant::y), 4u);
}

TEST(Candidates, MatchHilbertSymbolConditions)
{
    proptest::gen g(41);
    for (int i = 0; i < 1500; ++i) {
        const quadratic_field K(g.squarefree(200));
        const auto n = g.squarefree(200000);
        if (n == K.z())
            continue;
        for (auto v : {selmer_variant::x, selmer_variant::y}) {
            const auto got = candidates(K, factorize(n), v);
            ASSERT_EQ(sorted(got.members), candidates_by_hilbert(K, n, v)) << K.z() << " " << n << " " << to_string(v);
            ASSERT_EQ(got.size(), candidate_count(K, factorize(n), v));
            ASSERT_EQ(got.is_trivial(), candidates_trivial(K, factorize(n), v));
        }
    }
}

TEST(Candidates, StructuralInvariants)
{
    proptest::gen g(42);
    for (int i = 0; i < 1000; ++i) {
        const quadratic_field K(g.squarefree(100));
        const auto n = g.squarefree(1'000'000);
        if (n == K.z())
            continue;
        const auto s = xn_candidates(K, n);
        ASSERT_TRUE(s.contains(1));
        ASSERT_EQ(s.members.front(), 1);
        const std::int64_t two_delta_n = 2 * K.disc() * n;
        for (auto d : s.members) {
            ASSERT_TRUE(is_squarefree(d));
            ASSERT_EQ(two_delta_n % d, 0) << d;
        }
        for (std::size_t j = 1; j < s.members.size(); ++j)
            ASSERT_TRUE(detail::character_less(s.members[j - 1], s.members[j]));
    }
}

TEST(Candidates, DualRouteAgrees)
{
    proptest::gen g(43);
    int tested = 0;
    while (tested < 1000) {
        const quadratic_field K(g.squarefree(300));
        const auto n = g.squarefree(10'000'000);
        if (n == K.z())
            continue;
        ++tested;
        ASSERT_EQ(yn_candidates_dual(K, n).members, yn_candidates(K, n).members) << K.z() << " " << n;
    }
}

TEST(SelmerDimension, Examples)
{
    EXPECT_EQ(sel_dim_formula(quadratic_field(-1), 21), 2);
    // over Q(sqrt 5) both 2 and 7 are inert and divide Delta_7 = 28, so the place table gives
    // 0 - 1 + 2 = 1; the twist is not generic (d = 2 passes every condition)
    EXPECT_EQ(xn_candidates(quadratic_field(5), 7).to_string(), "{1, 2, -5, -10}");
    EXPECT_THROW(sel_dim_formula(quadratic_field(5), 7), domain_error);
    EXPECT_EQ(sel_dim_from_places(quadratic_field(5), factorize(7)), 1);
    // 5 and 13 split in Q(i), so d = 5, 13, ... survive and the formula does not apply;
    // the place table still evaluates to 0 + 0
    EXPECT_EQ(xn_candidates(quadratic_field(-1), 65).size(), 8u);
    EXPECT_THROW(sel_dim_formula(quadratic_field(-1), 65), domain_error);
    EXPECT_THROW(sel_dim_formula(quadratic_field(-1), 3), domain_error);
}

TEST(SelmerDimension, PlaceTable)
{
    const quadratic_field K(-1);
    const auto t = place_dimension_table(K, factorize(21));
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].v, place::infinity());
    EXPECT_EQ(t[1].v, place::prime(2));
    EXPECT_EQ(t[2].v, place::prime(3));
    EXPECT_EQ(t[3].v, place::prime(7));
    EXPECT_EQ(sel_dim_from_places(K, factorize(21)), 2);
    EXPECT_EQ(sel_dim_from_places(K, factorize(65)), 0);
}

TEST(SelmerDimension, PlaceTableMatchesFormulaOnGenericTwists)
{
    proptest::gen g(44);
    int generic = 0;
    for (int i = 0; i < 20000; ++i) {
        const quadratic_field K(g.squarefree(100));
        const auto n = factorize(g.squarefree(100000));
        if (n.value == K.z() || !candidates_trivial(K, n, selmer_variant::x) ||
            !candidates_trivial(K, n, selmer_variant::y))
            continue;
        ++generic;
        ASSERT_EQ(sel_dim_from_places(K, n), sel_dim_formula(K, n)) << K.z() << " " << n.value;
    }
    EXPECT_GT(generic, 30);
}

TEST(Prediction, Examples)
{
    const auto K = with_class_group(-1);
    EXPECT_EQ(predicted_rk4(K, 21), 1);
    EXPECT_EQ(predicted_rk4(K, 3), 0);
    EXPECT_EQ(predicted_rk4(K, 577), -1);
    EXPECT_THROW(predicted_rk4(K, -1), domain_error);
    EXPECT_THROW(predicted_rk4(quadratic_field(-5), 3), state_error);
}

TEST(Prediction, GaussianFieldCountsPrimesThreeModFour)
{
    const auto K = with_class_group(-1);
    for (std::int64_t n = 3; n < 20000; n += 2)
        if (is_squarefree(n))
            ASSERT_EQ(predicted_rk4(K, n), omega3(n) - 1) << n;
}

TEST(Prediction, ImaginaryFieldsUseGenusTheory)
{
    for (std::int64_t z : {-1, -2, -3, -5, -6, -21, -105}) {
        const auto K = with_class_group(z);
        proptest::gen g(45);
        for (int i = 0; i < 300; ++i) {
            const auto n = factorize(g.squarefree(100000));
            if (n.value == z)
                continue;
            ASSERT_EQ(predicted_rk4(K, n), omega_inert_disc(K, n) + 2 * K.omega_disc() - 3) << z << " " << n.value;
        }
    }
}

TEST(Identity, NonGenericTwistIsReported)
{
    const auto K = with_class_group(-1);
    const auto oracle = class_group(number_field_order::biquadratic(-1, 3)).group;
    EXPECT_EQ(oracle.rank4(), 0);
    const auto r = generic_identity_check(K, factorize(3), oracle);
    EXPECT_FALSE(r.generic);
    EXPECT_EQ(r.x_size, 2u);
    EXPECT_FALSE(r.sel_dim);
    EXPECT_FALSE(r.note.empty());
}

TEST(Identity, TwistByTwentyOneDisagrees)
{
    // The formula side is 2 + 0 - 1 = 1, but Cl(Q(i, sqrt 21)) has order 2, so its 4-rank is 0.
    const auto K = with_class_group(-1);
    const auto oracle = class_group(number_field_order::biquadratic(-1, 21)).group;
    const auto r = generic_identity_check(K, factorize(21), oracle);
    EXPECT_TRUE(r.generic);
    EXPECT_EQ(r.sel_dim, 2);
    EXPECT_EQ(r.predicted, 1);
    EXPECT_EQ(r.oracle_rk4, 0);
    EXPECT_FALSE(r.agree);
    EXPECT_NE(r.note.find("[2]"), std::string::npos);
}

TEST(Identity, AgreesOnSmallGenericTwists)
{
    const auto K = with_class_group(-1);
    for (std::int64_t n : {7, 11, 19, 23, 31}) {
        const auto nf = factorize(n);
        if (!candidates_trivial(K, nf, selmer_variant::x) || !candidates_trivial(K, nf, selmer_variant::y))
            continue;
        const auto r = generic_identity_check(K, nf, class_group(number_field_order::biquadratic(-1, n)).group);
        EXPECT_TRUE(r.agree) << n << ": " << r.note;
    }
}
