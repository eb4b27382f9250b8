#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fourrank/io/csv.hpp"
#include "fourrank/moments/campaign.hpp"
#include "fourrank/moments/statistics.hpp"

namespace fourrank::report {

/// A table with typed cells, rendered to CSV or to a JSON array of objects with the same keys.
struct table {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::ordered_json>> rows;

    void write_csv(std::ostream& os) const
    {
        csv::write_row(os, header);
        for (const auto& r : rows) {
            std::vector<std::string> cells;
            for (const auto& c : r)
                cells.push_back(cell_text(c));
            csv::write_row(os, cells);
        }
    }

    nlohmann::ordered_json to_json() const
    {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < header.size(); ++i)
                obj[header[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }

    void write_json(std::ostream& os) const { os << to_json().dump(2) << '\n'; }

    static std::string cell_text(const nlohmann::ordered_json& c)
    {
        if (c.is_null())
            return "";
        if (c.is_string())
            return c.get<std::string>();
        if (c.is_boolean())
            return c.get<bool>() ? "1" : "0";
        if (c.is_number_float())
            return csv::format_double(c.get<double>());
        return c.dump();
    }
};

inline table moments_table(const std::vector<moment_row>& rows)
{
    table t{{"X", "sum_X", "sum_Y", "sqfree_count", "frac_trivial_X", "frac_trivial_Y", "reference"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.X, r.sum_x, r.sum_y, r.sqfree_count, r.frac_trivial_x(), r.frac_trivial_y(), r.reference()});
    return t;
}

inline table campaign_table(const campaign_report& rep)
{
    table t{{"n", "delta_n", "omega_inert", "predicted", "generic_x", "generic_y", "oracle_rk4", "oracle_status", "agree"},
            {}};
    for (const auto& r : rep.rows) {
        nlohmann::ordered_json rk4 = nullptr, agree = nullptr;
        if (r.oracle_rk4) {
            rk4 = *r.oracle_rk4;
            agree = r.agree;
        }
        t.rows.push_back({r.n, r.delta_n, r.omega_inert, r.predicted, r.generic_x, r.generic_y, rk4, r.oracle_status,
                          agree});
    }
    return t;
}

inline table ek_table(const ek_result& ek)
{
    table t{{"z", "F_emp", "Phi"}, {}};
    for (const auto& p : ek.grid)
        t.rows.push_back({p.z, p.F, p.Phi});
    return t;
}

} // namespace fourrank::report
