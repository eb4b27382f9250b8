#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fourrank/arith/sieve.hpp"
#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/classgroup/analytic.hpp"
#include "fourrank/classgroup/hnf.hpp"
#include "fourrank/classgroup/order.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

enum class oracle_status { certified, stable };

inline const char* to_string(oracle_status s) { return s == oracle_status::certified ? "certified" : "stable"; }

struct class_group_budget {
    /// Elements tried (norm computations) before giving up.
    std::uint64_t max_trials = 3'000'000;
    /// Quartic stopping rule: this many times |factor base| consecutive relations without
    /// the relation lattice changing.
    double stable_factor = 5.0;
    /// Floor on that count, so that tiny factor bases are not declared stable after a handful of relations.
    std::size_t min_patience = 200;
    std::uint64_t seed = 0x2545f4914f6cdd1dull;
    std::int64_t max_abs_disc_quadratic = 10'000'000'000;
    std::int64_t max_abs_disc_quartic = 100'000'000;
};

/// The budget ran out; carries the group of the relations found so far, which surjects
/// onto the true class group (an upper bound) when the lattice already had full rank.
class class_group_budget_error : public resource_error {
public:
    class_group_budget_error(const std::string& what, std::optional<abelian_group> partial)
        : resource_error(what), partial_(std::move(partial))
    {
    }
    const std::optional<abelian_group>& partial() const { return partial_; }

private:
    std::optional<abelian_group> partial_;
};

struct factor_base_entry {
    prime_ideal ideal;
    int_basis<4> lattice;
};

/// Exponent vector over the factor base of the principal ideal (witness).
struct relation_row {
    std::vector<std::int64_t> exponents;
    order_vec witness;
};

struct class_group_result {
    abelian_group group;
    oracle_status status = oracle_status::stable;
    std::size_t factor_base_size = 0;
    std::size_t relations = 0;
    std::uint64_t trials = 0;
};

/// Relation-collection class group computation for a quadratic or biquadratic maximal order.
class class_group_engine {
public:
    explicit class_group_engine(const number_field_order& order, class_group_budget budget = {})
        : order_(order), budget_(budget), rng_(budget.seed ^ std::uint64_t(order.disc()) * 0x9e3779b97f4a7c15ull)
    {
        const std::int64_t ad = order.disc() < 0 ? -order.disc() : order.disc();
        const std::int64_t lim = order.degree() == 2 ? budget.max_abs_disc_quadratic : budget.max_abs_disc_quartic;
        if (ad > lim)
            throw domain_error("class_group: |disc| = " + std::to_string(ad) + " exceeds the configured bound " +
                               std::to_string(lim));
        build_factor_base();
    }

    const std::vector<factor_base_entry>& factor_base() const { return fb_; }
    const std::vector<relation_row>& relations() const { return rows_; }
    const number_field_order& order() const { return order_; }

    class_group_result run()
    {
        class_group_result res;
        res.factor_base_size = fb_.size();
        if (fb_.empty()) {
            res.group = {};
            res.status = order_.degree() == 2 ? oracle_status::certified : oracle_status::stable;
            return res;
        }
        relation_lattice lat(fb_.size());
        const double h_analytic = order_.degree() == 2 ? analytic_class_number(order_.disc()) : 0.0;
        const std::size_t patience =
            std::max(budget_.min_patience, std::size_t(std::ceil(budget_.stable_factor * double(fb_.size()))));
        std::size_t since_change = 0;

        auto finished = [&]() -> bool {
            if (!lat.full_rank())
                return false;
            if (order_.degree() == 2)
                return lat.determinant().convert_to<double>() < std::sqrt(2.0) * h_analytic;
            // the computed group surjects onto the true one, so a trivial group is final
            return lat.determinant() == 1 || since_change >= patience;
        };
        auto offer = [&](const order_vec& c) {
            if (trials_ >= budget_.max_trials) {
                std::optional<abelian_group> partial;
                if (lat.full_rank())
                    partial = lat.structure();
                throw class_group_budget_error("class_group: budget of " + std::to_string(budget_.max_trials) +
                                                   " trials exhausted for " + order_.name() +
                                                   (partial ? " (partial group " + partial->to_string() + ")" : ""),
                                               partial);
            }
            ++trials_;
            auto rel = factor_element(c);
            if (!rel)
                return;
            const bool grew = lat.add(rel->exponents);
            rows_.push_back(std::move(*rel));
            since_change = grew ? 0 : since_change + 1;
        };

        // (p) for every rational prime below the bound
        for (const auto& slot : prime_slots_)
            if (slot.count > 0) {
                order_vec c{0, 0, 0, 0};
                c[0] = std::int64_t(slot.p);
                offer(c);
            }
        // short vectors of the order and of each prime ideal
        sweep(order_.reduced_basis(), 1, offer, finished);
        for (std::size_t i = 0; i < fb_.size() && !finished(); ++i)
            sweep(fb_[i].lattice, 1, offer, finished);

        std::int64_t box = 2;
        std::uint64_t round = 0;
        while (!finished()) {
            // random small elements of a random factor-base ideal
            const auto& e = fb_[rng_() % fb_.size()];
            order_vec coef{0, 0, 0, 0};
            for (int j = 0; j < order_.degree(); ++j)
                coef[j] = std::int64_t(rng_() % std::uint64_t(2 * box + 1)) - box;
            order_vec c{0, 0, 0, 0};
            for (int j = 0; j < order_.degree(); ++j)
                for (int t = 0; t < order_.degree(); ++t)
                    c[t] += coef[j] * e.lattice[std::size_t(j)][std::size_t(t)];
            if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; }))
                continue;
            offer(c);
            if (++round % (50 * fb_.size() + 100) == 0 && box < 64)
                ++box;
        }
        res.group = lat.structure();
        res.status = order_.degree() == 2 ? oracle_status::certified : oracle_status::stable;
        res.relations = rows_.size();
        res.trials = trials_;
        return res;
    }

    /// Factors the principal ideal of the element with integral-basis coordinates c over the
    /// factor base; nullopt when it is not smooth.
    std::optional<relation_row> factor_element(const order_vec& c) const
    {
        const auto x = order_.to_scaled(c);
        std::optional<i128> nf = order_.norm_fast(x);
        u128 N;
        if (nf) {
            N = abs_u128(*nf);
        } else {
            const bigint nb = abs(order_.norm(x));
            if (nb >= (bigint(1) << 100))
                return std::nullopt;
            N = u128(nb.convert_to<unsigned long long>()) |
                (u128(bigint(nb >> 64).convert_to<unsigned long long>()) << 64);
        }
        if (N == 0)
            return std::nullopt;
        relation_row row{std::vector<std::int64_t>(fb_.size(), 0), c};
        for (const auto& [p, first, count] : prime_slots_) {
            if (N == 1)
                break;
            if (N % p != 0)
                continue;
            int k = 0;
            while (N % p == 0) {
                N /= p;
                ++k;
            }
            int acc = 0;
            const auto& all = above_[first];
            if (all.size() == 1) {
                if (k % all[0].f != 0)
                    throw domain_error("factor_element: norm valuation inconsistent at p=" + std::to_string(p));
                if (count == 0)
                    return std::nullopt;
                row.exponents[first_fb_[first]] = k / all[0].f;
                continue;
            }
            for (std::size_t j = 0; j < all.size(); ++j) {
                const int v = order_.valuation(all[j], x);
                if (v == 0)
                    continue;
                const int col = column_of(first, j);
                if (col < 0)
                    return std::nullopt;
                row.exponents[std::size_t(col)] = v;
                acc += v * all[j].f;
            }
            if (acc != k)
                throw domain_error("factor_element: valuations do not account for the norm at p=" + std::to_string(p));
        }
        if (N != 1)
            return std::nullopt;
        return row;
    }

    /// Re-verifies a stored relation against its witness (norm and per-prime valuations).
    bool verify(const relation_row& row) const
    {
        auto again = factor_element(row.witness);
        if (!again || again->exponents != row.exponents)
            return false;
        const auto x = order_.to_scaled(row.witness);
        bigint N = abs(order_.norm(x));
        bigint prod = 1;
        for (std::size_t i = 0; i < fb_.size(); ++i)
            for (std::int64_t e = 0; e < row.exponents[i]; ++e)
                prod *= bigint(fb_[i].ideal.norm());
        return N == prod;
    }

private:
    struct prime_slot {
        std::uint64_t p;
        std::size_t first; // index into above_
        std::size_t count; // number of factor-base ideals above p
    };

    void build_factor_base()
    {
        const double bound = std::floor(order_.minkowski_bound());
        if (bound < 2)
            return;
        for (auto p : primes_up_to(std::uint64_t(bound))) {
            auto ideals = order_.primes_above(p);
            prime_slot slot{p, above_.size(), 0};
            first_fb_.push_back(fb_.size());
            std::vector<int> cols;
            for (auto& P : ideals) {
                if (double(P.norm()) <= bound) {
                    cols.push_back(int(fb_.size()));
                    fb_.push_back({P, order_.ideal_basis(P)});
                    ++slot.count;
                } else {
                    cols.push_back(-1);
                }
            }
            columns_.push_back(std::move(cols));
            above_.push_back(std::move(ideals));
            prime_slots_.push_back(slot);
        }
    }

    int column_of(std::size_t slot, std::size_t j) const { return columns_[slot][j]; }

    template <class Offer, class Done>
    void sweep(const int_basis<4>& basis, std::int64_t B, Offer& offer, Done& done)
    {
        const int N = order_.degree();
        const std::int64_t width = 2 * B + 1;
        std::int64_t total = 1;
        for (int i = 0; i < N; ++i)
            total *= width;
        // half of the box: elements up to sign
        for (std::int64_t idx = total / 2 + 1; idx < total && !done(); ++idx) {
            std::int64_t t = idx;
            order_vec c{0, 0, 0, 0};
            for (int i = 0; i < N; ++i) {
                const std::int64_t coef = t % width - B;
                t /= width;
                for (int j = 0; j < N; ++j)
                    c[j] += coef * basis[std::size_t(i)][std::size_t(j)];
            }
            offer(c);
        }
    }

    number_field_order order_;
    class_group_budget budget_;
    std::mt19937_64 rng_;
    std::vector<factor_base_entry> fb_;
    std::vector<std::vector<prime_ideal>> above_;
    std::vector<std::vector<int>> columns_;
    std::vector<std::size_t> first_fb_;
    std::vector<prime_slot> prime_slots_;
    std::vector<relation_row> rows_;
    std::uint64_t trials_ = 0;
};

/// Class group of a maximal order (see class_group_engine).
inline class_group_result class_group(const number_field_order& order, const class_group_budget& budget = {})
{
    class_group_engine engine(order, budget);
    return engine.run();
}

/// Computes and caches Cl(K) on the field.
inline const abelian_group& attach_class_group(quadratic_field& field, const class_group_budget& budget = {})
{
    if (!field.class_group()) {
        auto order = number_field_order::quadratic(field.z());
        field.set_class_group(class_group(order, budget).group);
    }
    return *field.class_group();
}

} // namespace fourrank
