#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/classgroup/order.hpp"
#include "fourrank/classgroup/relations.hpp"
#include "fourrank/error.hpp"
#include "fourrank/io/csv.hpp"

namespace fourrank {

/// "z" for Q(sqrt z) or "m,n" for Q(sqrt m, sqrt n).
struct field_spec {
    std::int64_t m = 0;
    std::optional<std::int64_t> n;

    static field_spec parse(const std::string& text)
    {
        auto parse_int = [&](const std::string& s) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(s, &pos);
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != s.size() || s.empty())
                throw domain_error("field spec '" + text + "': '" + s + "' is not an integer");
            return std::int64_t(v);
        };
        field_spec f;
        const auto comma = text.find(',');
        if (comma == std::string::npos) {
            f.m = parse_int(text);
        } else {
            f.m = parse_int(text.substr(0, comma));
            f.n = parse_int(text.substr(comma + 1));
        }
        return f;
    }

    std::string to_string() const { return std::to_string(m) + (n ? "," + std::to_string(*n) : ""); }

    number_field_order order() const
    {
        return n ? number_field_order::biquadratic(m, *n) : number_field_order::quadratic(m);
    }

    friend bool operator==(const field_spec&, const field_spec&) = default;
};

/// One row of the class-group exchange format.
struct class_group_record {
    field_spec spec;
    std::int64_t disc = 0;
    abelian_group group;
    oracle_status status = oracle_status::stable;
};

inline const std::vector<std::string>& class_group_csv_header()
{
    static const std::vector<std::string> h{"field_spec", "disc", "invariant_factors", "status"};
    return h;
}

inline class_group_record compute_class_group_record(const field_spec& spec, const class_group_budget& budget = {})
{
    const auto order = spec.order();
    const auto res = class_group(order, budget);
    return {spec, order.disc(), res.group, res.status};
}

/// "[2,4]" -> the group; rejects lists that are not a divisibility chain.
inline abelian_group parse_invariant_factors(const std::string& text)
{
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw domain_error("invariant factors '" + text + "' must look like [d1,d2,...]");
    std::vector<std::uint64_t> ds;
    const std::string body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (start < body.size()) {
        const auto end = body.find(',', start);
        const std::string tok = body.substr(start, end == std::string::npos ? std::string::npos : end - start);
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != tok.size() || v < 2)
            throw domain_error("invariant factors '" + text + "': bad entry '" + tok + "'");
        ds.push_back(v);
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    auto g = abelian_group::from_cyclic_orders(ds);
    if (g.invariant_factors() != ds)
        throw domain_error("invariant factors '" + text + "' do not form a divisibility chain d1 | d2 | ...");
    return g;
}

inline oracle_status parse_oracle_status(const std::string& s)
{
    if (s == "certified")
        return oracle_status::certified;
    if (s == "stable")
        return oracle_status::stable;
    throw domain_error("status '" + s + "' must be certified or stable");
}

inline void write_class_group_csv(std::ostream& os, const std::vector<class_group_record>& rows)
{
    csv::write_row(os, class_group_csv_header());
    for (const auto& r : rows)
        csv::write_row(os, {r.spec.to_string(), std::to_string(r.disc), r.group.to_string(), to_string(r.status)});
}

/// Reads rows written by write_class_group_csv (or by an external system in the same
/// format); the discriminant must match the one implied by the field spec.
inline std::vector<class_group_record> read_class_group_csv(std::istream& is)
{
    auto rows = csv::read_rows(is);
    if (rows.empty() || rows.front() != class_group_csv_header())
        throw domain_error("class-group csv: missing header field_spec,disc,invariant_factors,status");
    std::vector<class_group_record> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4)
            throw domain_error("class-group csv line " + std::to_string(i + 1) + ": expected 4 fields");
        class_group_record rec;
        rec.spec = field_spec::parse(r[0]);
        try {
            std::size_t pos = 0;
            rec.disc = std::stoll(r[1], &pos);
            if (pos != r[1].size())
                throw std::invalid_argument(r[1]);
        } catch (const std::exception&) {
            throw domain_error("class-group csv line " + std::to_string(i + 1) + ": bad disc '" + r[1] + "'");
        }
        rec.group = parse_invariant_factors(r[2]);
        rec.status = parse_oracle_status(r[3]);
        const auto expected = rec.spec.order().disc();
        if (expected != rec.disc)
            throw domain_error("class-group csv line " + std::to_string(i + 1) + ": disc " + r[1] +
                               " does not match field " + r[0] + " (expected " + std::to_string(expected) + ")");
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace fourrank
