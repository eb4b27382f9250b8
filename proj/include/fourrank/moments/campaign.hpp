#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fourrank/classgroup/records.hpp"
#include "fourrank/classgroup/relations.hpp"
#include "fourrank/parallel.hpp"
#include "fourrank/quadfield.hpp"
#include "fourrank/selmer.hpp"

namespace fourrank {

/// Which n a campaign visits: squarefree n with nmin <= |n| <= nmax.
struct sample_spec {
    std::int64_t nmin = 2;
    std::int64_t nmax = 300;
    bool odd_only = true;
    bool include_negative = false;

    std::vector<std::int64_t> values() const
    {
        if (nmin < 1 || nmax < nmin)
            throw domain_error("sample_spec: need 1 <= nmin <= nmax");
        std::vector<std::int64_t> out;
        for (std::int64_t m = nmin; m <= nmax; ++m) {
            if ((odd_only && m % 2 == 0) || !is_squarefree(m))
                continue;
            out.push_back(m);
            if (include_negative)
                out.push_back(-m);
        }
        return out;
    }
};

struct campaign_row {
    std::int64_t n = 0;
    std::int64_t delta_n = 0;
    int omega_inert = 0;
    int predicted = 0;
    bool generic_x = false;
    bool generic_y = false;
    std::optional<int> oracle_rk4;
    /// certified, stable, or why the oracle produced nothing (budget, bound)
    std::string oracle_status;
    std::optional<abelian_group> oracle_group;
    bool agree = false;
    std::string note;

    bool generic() const { return generic_x && generic_y; }
    bool counted() const
    {
        return generic() && oracle_rk4 && (oracle_status == "certified" || oracle_status == "stable");
    }
};

struct campaign_report {
    std::int64_t z = 0;
    std::vector<campaign_row> rows;
    /// n = z (K(sqrt n) = K), skipped
    std::vector<std::int64_t> rejected;

    std::size_t counted() const
    {
        std::size_t c = 0;
        for (const auto& r : rows)
            c += r.counted();
        return c;
    }

    std::size_t agreeing() const
    {
        std::size_t c = 0;
        for (const auto& r : rows)
            c += r.counted() && r.agree;
        return c;
    }

    /// Agreement among generic rows with an oracle result; nullopt when there are none.
    std::optional<double> agreement_rate() const
    {
        const auto c = counted();
        if (c == 0)
            return std::nullopt;
        return double(agreeing()) / double(c);
    }

    /// Counted disagreements where the oracle 4-rank is below the prediction.
    std::vector<std::int64_t> below_prediction() const
    {
        std::vector<std::int64_t> out;
        for (const auto& r : rows)
            if (r.counted() && !r.agree && *r.oracle_rk4 < r.predicted)
                out.push_back(r.n);
        return out;
    }
};

/// Externally supplied class groups of K(sqrt n), keyed by n.
using oracle_override = std::map<std::int64_t, class_group_record>;

/// Prediction against the class-group oracle for every n of the sample. Oracle failures are
/// recorded on the row and never abort the campaign.
inline campaign_report verify_campaign(const quadratic_field& field, const sample_spec& sample,
                                       const class_group_budget& budget = {}, unsigned threads = 1,
                                       const oracle_override* external = nullptr)
{
    if (!field.class_group())
        throw state_error("verify_campaign: class group of " + field.name() + " not attached");
    campaign_report rep;
    rep.z = field.z();
    std::vector<std::int64_t> ns;
    for (auto n : sample.values()) {
        if (n == field.z() || n == 1)
            rep.rejected.push_back(n);
        else
            ns.push_back(n);
    }
    rep.rows = parallel_map<campaign_row>(ns.size(), threads, [&](std::size_t i) {
        const auto nf = factorize(ns[i]);
        campaign_row r;
        r.n = nf.value;
        r.delta_n = fundamental_discriminant(r.n);
        r.omega_inert = omega_inert_disc(field, nf);
        r.predicted = predicted_rk4(field, nf);
        r.generic_x = candidates_trivial(field, nf, selmer_variant::x);
        r.generic_y = candidates_trivial(field, nf, selmer_variant::y);
        if (external) {
            auto it = external->find(r.n);
            if (it != external->end()) {
                r.oracle_group = it->second.group;
                r.oracle_status = to_string(it->second.status);
            }
        }
        if (!r.oracle_group) {
            try {
                const auto order = number_field_order::biquadratic(field.z(), r.n);
                const auto res = class_group(order, budget);
                r.oracle_group = res.group;
                r.oracle_status = to_string(res.status);
            } catch (const class_group_budget_error& e) {
                r.oracle_status = "budget";
                r.note = e.what();
            } catch (const domain_error& e) {
                r.oracle_status = "skipped";
                r.note = e.what();
            }
        }
        if (r.oracle_group) {
            r.oracle_rk4 = r.oracle_group->rank4();
            r.agree = *r.oracle_rk4 == r.predicted;
            if (r.generic() && !r.agree)
                r.note = "oracle group " + r.oracle_group->to_string() + " has rk4 " + std::to_string(*r.oracle_rk4) +
                         ", predicted " + std::to_string(r.predicted);
        }
        return r;
    });
    return rep;
}

} // namespace fourrank
